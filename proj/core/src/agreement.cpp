#include "bb84sec/agreement.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace bb84sec {

namespace {

constexpr std::size_t kBruteforceLimit = 20;

// (2^m + 1) / 2^(m+1): agreement of a bit that survived m independent
// intercept-resend measurements.  Exact dyadic arithmetic.
double survival_agreement(unsigned m) {
    return std::ldexp(static_cast<double>((std::uint64_t{1} << m) + 1),
                      -static_cast<int>(m) - 1);
}

}  // namespace

AgreementProbability noiseless_bob_agreement(std::span<const double> omegas) {
    double prod = 1.0;
    for (double w : omegas) {
        if (!(w >= 0.0 && w <= 1.0)) {
            throw std::invalid_argument("noiseless_bob_agreement: omega outside [0,1]");
        }
        prod *= 1.0 - w / 2.0;
    }
    return AgreementProbability(0.5 + 0.5 * prod);
}

AgreementProbability noiseless_bob_agreement_bruteforce(std::span<const double> omegas) {
    const std::size_t n = omegas.size();
    if (n > kBruteforceLimit) {
        throw std::length_error("noiseless_bob_agreement_bruteforce: N > 20");
    }
    for (double w : omegas) {
        if (!(w >= 0.0 && w <= 1.0)) {
            throw std::invalid_argument(
                "noiseless_bob_agreement_bruteforce: omega outside [0,1]");
        }
    }
    double total = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        double weight = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            weight *= (mask >> i & 1) ? omegas[i] : 1.0 - omegas[i];
        }
        total += weight * survival_agreement(static_cast<unsigned>(std::popcount(mask)));
    }
    return AgreementProbability(total);
}

AgreementProbability bob_agreement(ChannelNoise channel, std::span<const double> omegas) {
    const double noiseless = noiseless_bob_agreement(omegas).value();
    return AgreementProbability(depolarize_agreement(noiseless, channel));
}

namespace {

// Shared tail of both eve_agreement forms: combine the intercepted-branch
// subset sum with the coin-toss branch under the two noise placements.
double eve_agreement_from_sum(double subset_sum, std::size_t m, ChannelNoise channel,
                              const AttackChain& chain) {
    const double w_m = chain.omegas()[m - 1];
    const double q_up = chain.cumulative_q(m);  // noise upstream of eavesdropper m
    const double p = channel.p();
    const double noise_up = (1.0 - 4.0 * p / 3.0) * subset_sum + (1.0 - w_m) / 2.0 +
                            (2.0 * p / 3.0) * w_m;
    const double noise_down = (1.0 - w_m) / 2.0 + subset_sum;
    return q_up * noise_up + (1.0 - q_up) * noise_down;
}

void check_eve_index(std::size_t m, const AttackChain& chain) {
    if (m < 1 || m > chain.eavesdropper_count()) {
        throw std::out_of_range("eve_agreement: eavesdropper index outside 1..N");
    }
}

}  // namespace

AgreementProbability eve_agreement(std::size_t m, ChannelNoise channel,
                                   const AttackChain& chain) {
    check_eve_index(m, chain);
    double prod = 1.0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        prod *= 1.0 - chain.omegas()[i] / 2.0;
    }
    const double subset_sum = chain.omegas()[m - 1] * (0.5 + 0.25 * prod);
    return AgreementProbability(eve_agreement_from_sum(subset_sum, m, channel, chain));
}

AgreementProbability eve_agreement_bruteforce(std::size_t m, ChannelNoise channel,
                                              const AttackChain& chain) {
    check_eve_index(m, chain);
    if (m > kBruteforceLimit) {
        throw std::length_error("eve_agreement_bruteforce: m > 20");
    }
    const std::size_t priors = m - 1;
    double subset_sum = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << priors); ++mask) {
        double weight = 1.0;
        for (std::size_t i = 0; i < priors; ++i) {
            weight *= (mask >> i & 1) ? chain.omegas()[i] : 1.0 - chain.omegas()[i];
        }
        // Interceptors on the mask plus eavesdropper m herself.
        const unsigned intercepts = static_cast<unsigned>(std::popcount(mask)) + 1;
        subset_sum += weight * survival_agreement(intercepts);
    }
    subset_sum *= chain.omegas()[m - 1];
    return AgreementProbability(eve_agreement_from_sum(subset_sum, m, channel, chain));
}

}  // namespace bb84sec
