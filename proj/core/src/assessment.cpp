#include "bb84sec/assessment.hpp"

#include <algorithm>

#include "bb84sec/agreement.hpp"
#include "bb84sec/entropy.hpp"

namespace bb84sec {

double lost_information(ChannelNoise channel, const AttackChain& chain) {
    double i_ae_max = 0.0;
    for (std::size_t m = 1; m <= chain.eavesdropper_count(); ++m) {
        i_ae_max = std::max(i_ae_max,
                            mutual_information(eve_agreement(m, channel, chain)));
    }
    return i_ae_max + binary_entropy(channel.flip_probability());
}

double added_error(ChannelNoise channel, std::span<const double> omegas) {
    const double noiseless = noiseless_bob_agreement(omegas).value();
    return (1.0 - noiseless) * (1.0 - 4.0 * channel.p() / 3.0);
}

SecurityAssessment assess(ChannelNoise channel, const AttackChain& chain) {
    SecurityAssessment out;
    out.i_ab = mutual_information(bob_agreement(channel, chain.omegas()));
    out.i_ae.reserve(chain.eavesdropper_count());
    out.i_ae_max = 0.0;
    for (std::size_t m = 1; m <= chain.eavesdropper_count(); ++m) {
        out.i_ae.push_back(mutual_information(eve_agreement(m, channel, chain)));
        out.i_ae_max = std::max(out.i_ae_max, out.i_ae.back());
    }
    out.h_delta = binary_entropy(channel.flip_probability());
    out.i_lost = out.i_ae_max + out.h_delta;
    out.added_error = added_error(channel, chain.omegas());
    out.secured = out.i_ab > out.i_lost;
    return out;
}

double security_margin(ChannelNoise channel, const AttackChain& chain) {
    const SecurityAssessment a = assess(channel, chain);
    return a.i_ab - a.i_lost;
}

}  // namespace bb84sec
