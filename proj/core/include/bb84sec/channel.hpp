#pragma once

namespace bb84sec {

// Depolarizing channel: the photon passes untouched with probability 1-p and
// is hit by one of the three Pauli operators with probability p/3 each.
class ChannelNoise {
public:
    explicit ChannelNoise(double p);  // throws std::invalid_argument outside [0,1]

    double p() const { return p_; }

    // Probability that the channel flips the bit seen in any fixed basis.
    // Two of the three Paulis flip a given basis, hence 2p/3.
    double flip_probability() const { return 2.0 * p_ / 3.0; }

private:
    double p_;
};

double flip_probability(ChannelNoise channel);

// Agreement after one extra pass through the channel.  A flip channel with
// rate d scales the correlation 2a-1 by 1-2d; with d = 2p/3 that is a
// contraction by 1-4p/3 around the 1/2 fixed point.
double depolarize_agreement(double agreement, ChannelNoise channel);

}  // namespace bb84sec
