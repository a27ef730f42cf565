#include "bb84sec/channel.hpp"

#include <stdexcept>

namespace bb84sec {

ChannelNoise::ChannelNoise(double p) : p_(p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("ChannelNoise: p outside [0,1]");
    }
}

double flip_probability(ChannelNoise channel) {
    return channel.flip_probability();
}

double depolarize_agreement(double agreement, ChannelNoise channel) {
    return agreement * (1.0 - 4.0 * channel.p() / 3.0) + 2.0 * channel.p() / 3.0;
}

}  // namespace bb84sec
