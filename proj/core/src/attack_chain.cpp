#include "bb84sec/attack_chain.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace bb84sec {

namespace {
constexpr double kSumTolerance = 1e-9;
}

AttackChain::AttackChain(std::vector<double> omegas, std::vector<double> qs)
    : omegas_(std::move(omegas)), qs_(std::move(qs)) {
    if (qs_.size() != omegas_.size() + 1) {
        throw std::invalid_argument(
            "AttackChain: need one noise weight per line segment (N+1 entries)");
    }
    for (double w : omegas_) {
        if (!(w >= 0.0 && w <= 1.0)) {
            throw std::invalid_argument("AttackChain: omega outside [0,1]");
        }
    }
    for (double q : qs_) {
        if (!(q >= 0.0 && q <= 1.0)) {
            throw std::invalid_argument("AttackChain: q outside [0,1]");
        }
    }
    const double total = std::accumulate(qs_.begin(), qs_.end(), 0.0);
    if (std::abs(total - 1.0) > kSumTolerance) {
        throw std::invalid_argument("AttackChain: noise weights must sum to 1");
    }
}

double AttackChain::cumulative_q(std::size_t m) const {
    if (m > qs_.size()) {
        throw std::out_of_range("AttackChain::cumulative_q: segment index");
    }
    return std::accumulate(qs_.begin(), qs_.begin() + static_cast<long>(m), 0.0);
}

AttackChain no_attack() {
    return AttackChain({}, {1.0});
}

}  // namespace bb84sec
