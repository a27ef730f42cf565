#include "bb84sec/entropy.hpp"

#include <cmath>
#include <stdexcept>

namespace bb84sec {

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error("binary_entropy: argument outside [0,1]");
    }
    if (x == 0.0 || x == 1.0) {
        return 0.0;
    }
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

AgreementProbability::AgreementProbability(double value) : value_(value) {
    // The closed forms are products and affine blends of values in [0,1];
    // allow the few ulps they can stray before clamping.
    constexpr double slack = 1e-12;
    if (!(value_ >= -slack && value_ <= 1.0 + slack)) {
        throw std::domain_error("AgreementProbability: value outside [0,1]");
    }
    if (value_ < 0.0) value_ = 0.0;
    if (value_ > 1.0) value_ = 1.0;
}

double mutual_information(AgreementProbability a) {
    return 1.0 - binary_entropy(a.value());
}

}  // namespace bb84sec
