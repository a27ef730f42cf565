#pragma once

#include <cstddef>
#include <span>

#include "bb84sec/attack_chain.hpp"
#include "bb84sec/channel.hpp"
#include "bb84sec/entropy.hpp"

namespace bb84sec {

// P(Bob's sifted bit = Alice's) on a noiseless line with interception
// probabilities omegas: 1/2 + (1/2) * prod_i (1 - omegas[i]/2).
// Each eavesdropper halves the excess correlation on the fraction of photons
// she touches.
AgreementProbability noiseless_bob_agreement(std::span<const double> omegas);

// Same quantity by explicit enumeration of interception subsets, weighting
// each subset of m interceptors by the survival probability (2^m+1)/2^(m+1)
// of the bit.  Exponential in N; throws std::length_error for N > 20.
AgreementProbability noiseless_bob_agreement_bruteforce(std::span<const double> omegas);

// Bob's agreement with the depolarizing event included: the noiseless value
// contracted once toward 1/2 by the channel.  Independent of where on the
// line the noise acts, so it takes no qs.
AgreementProbability bob_agreement(ChannelNoise channel, std::span<const double> omegas);

// P(eavesdropper m's recorded bit = Alice's sifted bit), m in 1..N.
// Non-intercepted photons contribute a coin toss; intercepted ones carry the
// correlation accumulated over eavesdroppers 1..m-1, degraded by the noise
// event when it lands upstream of m (probability cumulative_q(m)).
// Throws std::out_of_range unless 1 <= m <= N.
AgreementProbability eve_agreement(std::size_t m, ChannelNoise channel,
                                   const AttackChain& chain);

// Subset-enumeration form of the same probability: sums over the possible
// sets of non-interceptors among eavesdroppers 1..m-1, with the two noise
// placements (upstream / downstream of m) weighted by cumulative_q(m).
// Throws std::length_error for m > 20.
AgreementProbability eve_agreement_bruteforce(std::size_t m, ChannelNoise channel,
                                              const AttackChain& chain);

}  // namespace bb84sec
