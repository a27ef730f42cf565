#pragma once

namespace bb84sec {

// Shannon entropy of a Bernoulli(x) source in bits.  H(0) = H(1) = 0 by the
// usual 0*log2(0) = 0 convention.  Throws std::domain_error outside [0,1].
double binary_entropy(double x);

// Probability that a party's sifted bit equals Alice's.  Values produced by
// the closed forms are clamped against sub-ulp rounding excursions; anything
// materially outside [0,1] throws std::domain_error.
class AgreementProbability {
public:
    explicit AgreementProbability(double value);

    double value() const { return value_; }
    double disagreement() const { return 1.0 - value_; }

private:
    double value_;
};

// Mutual information in bits between Alice and a party that agrees with her
// on each sifted bit with probability a, both marginals uniform: 1 - H(a).
double mutual_information(AgreementProbability a);

}  // namespace bb84sec
