#pragma once

#include <span>
#include <vector>

#include "bb84sec/attack_chain.hpp"
#include "bb84sec/channel.hpp"

namespace bb84sec {

struct SecurityAssessment {
    double i_ab;                      // I(A,B) on sifted bits
    std::vector<double> i_ae;         // I(A,E_m), m = 1..N
    double i_ae_max;                  // 0 when N = 0
    double h_delta;                   // key-rate penalty H(2p/3) of the channel
    double i_lost;                    // i_ae_max + h_delta
    double added_error;               // QBER contributed by the attack alone
    bool secured;                     // i_ab > i_lost (equality is unsecured)
};

// Information leaked per sifted bit: the best eavesdropper's take plus the
// binary entropy of the channel flip rate.
double lost_information(ChannelNoise channel, const AttackChain& chain);

// Attack-attributable share of the QBER: total disagreement 1 - bob_agreement
// minus what the bare channel would cause, i.e. (1 - B(omegas)) * (1 - 4p/3)
// with B the noiseless agreement.
double added_error(ChannelNoise channel, std::span<const double> omegas);

SecurityAssessment assess(ChannelNoise channel, const AttackChain& chain);

// i_ab - i_lost; positive means a secure key can be distilled.
double security_margin(ChannelNoise channel, const AttackChain& chain);

}  // namespace bb84sec
