#pragma once

#include <cstddef>
#include <vector>

namespace bb84sec {

// A chain of N independent intercept-resend eavesdroppers on the line.
// omegas[i] is the interception probability of eavesdropper i+1 (in line
// order, Alice side first).  qs has N+1 entries and distributes the single
// depolarizing event over the N+1 line segments: qs[i] is the probability the
// noise acts before eavesdropper i+1, qs[N] that it acts between the last
// eavesdropper and Bob.
class AttackChain {
public:
    AttackChain(std::vector<double> omegas, std::vector<double> qs);

    std::size_t eavesdropper_count() const { return omegas_.size(); }
    const std::vector<double>& omegas() const { return omegas_; }
    const std::vector<double>& qs() const { return qs_; }

    // P(noise acts somewhere in segments 1..m) = qs[0] + ... + qs[m-1].
    double cumulative_q(std::size_t m) const;

private:
    std::vector<double> omegas_;
    std::vector<double> qs_;
};

// No eavesdroppers: the noise event always lands on the single Alice-Bob
// segment.
AttackChain no_attack();

}  // namespace bb84sec
