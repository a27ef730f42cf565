#include "bb84sec/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "bb84sec/agreement.hpp"
#include "bb84sec/entropy.hpp"

namespace bb84sec {

QRule QRule::uniform() {
    return QRule{};
}

QRule QRule::explicit_qs(std::vector<double> qs) {
    if (qs.empty()) {
        throw std::invalid_argument("QRule: explicit weights must be non-empty");
    }
    QRule rule;
    rule.qs_ = std::move(qs);
    return rule;
}

std::vector<double> QRule::resolve(std::size_t n_eves) const {
    if (is_uniform()) {
        return std::vector<double>(n_eves + 1, 1.0 / static_cast<double>(n_eves + 1));
    }
    if (qs_->size() != n_eves + 1) {
        throw std::invalid_argument(
            "QRule: explicit weights fix the eavesdropper count to size-1");
    }
    return *qs_;
}

const std::string& to_label(BoundaryStatus status) {
    static const std::string ok = "ok";
    static const std::string secured = "all_secured";
    static const std::string unsecured = "all_unsecured";
    switch (status) {
        case BoundaryStatus::root: return ok;
        case BoundaryStatus::all_secured: return secured;
        case BoundaryStatus::all_unsecured: return unsecured;
    }
    throw std::logic_error("to_label: bad status");
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_grid(std::span<const double> grid, const char* what) {
    if (grid.empty()) {
        throw std::invalid_argument(std::string(what) + ": empty grid");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= 0.0 && grid[i] <= 1.0)) {
            throw std::invalid_argument(std::string(what) + ": grid value outside [0,1]");
        }
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw std::invalid_argument(std::string(what) +
                                        ": grid must be strictly increasing");
        }
    }
}

// Bisect a margin that is positive at lo and non-positive at hi.  The
// residual guard catches a bracket that never actually straddled a root.
template <typename MarginFn>
double bisect_margin(MarginFn&& margin, double lo, double hi) {
    while (hi - lo >= kBisectionTolerance) {
        const double mid = 0.5 * (lo + hi);
        if (margin(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double root = 0.5 * (lo + hi);
    if (!(std::abs(margin(root)) < kRootResidualTolerance)) {
        throw std::runtime_error("bisection: margin residual at root is not small");
    }
    return root;
}

}  // namespace

PhaseBoundaryPoint critical_omega(double p, std::size_t n_eves, const QRule& q_rule) {
    if (n_eves < 1) {
        throw std::invalid_argument("critical_omega: need at least one eavesdropper");
    }
    const ChannelNoise channel(p);
    const std::vector<double> qs = q_rule.resolve(n_eves);
    const auto margin = [&](double omega) {
        return security_margin(channel,
                               AttackChain(std::vector<double>(n_eves, omega), qs));
    };
    if (margin(1.0) > 0.0) {
        return {p, BoundaryStatus::all_secured, kNaN};
    }
    if (margin(0.0) <= 0.0) {
        return {p, BoundaryStatus::all_unsecured, kNaN};
    }
    return {p, BoundaryStatus::root, bisect_margin(margin, 0.0, 1.0)};
}

QberPoint qber_at(double p, std::size_t n_eves, const QRule& q_rule) {
    const PhaseBoundaryPoint boundary = critical_omega(p, n_eves, q_rule);
    QberPoint out{p, boundary.status, boundary.omega_star, kNaN, {}};
    if (boundary.status != BoundaryStatus::root) {
        return out;
    }
    const ChannelNoise channel(p);
    const AttackChain chain(std::vector<double>(n_eves, boundary.omega_star),
                            q_rule.resolve(n_eves));
    out.at_threshold = assess(channel, chain);
    out.qber = added_error(channel, chain.omegas());
    return out;
}

SweepTable qber_curve(std::span<const double> p_grid, std::size_t n_eves,
                      const QRule& q_rule) {
    check_grid(p_grid, "qber_curve");
    SweepTable table({"p", "omega_star", "qber", "i_ab", "i_ae_max", "h_delta", "status"});
    for (double p : p_grid) {
        const QberPoint point = qber_at(p, n_eves, q_rule);
        const double h_delta = binary_entropy(ChannelNoise(p).flip_probability());
        if (point.status == BoundaryStatus::root) {
            table.add_row({SweepCell::number(p), SweepCell::number(point.omega_star),
                           SweepCell::number(point.qber),
                           SweepCell::number(point.at_threshold.i_ab),
                           SweepCell::number(point.at_threshold.i_ae_max),
                           SweepCell::number(h_delta), SweepCell::text(to_label(point.status))});
        } else {
            table.add_row({SweepCell::number(p), SweepCell::blank(), SweepCell::blank(),
                           SweepCell::blank(), SweepCell::blank(),
                           SweepCell::number(h_delta), SweepCell::text(to_label(point.status))});
        }
    }
    return table;
}

SweepTable lost_info_curve(std::span<const double> p_grid, double omega,
                           std::span<const double> q1_values) {
    check_grid(p_grid, "lost_info_curve");
    if (!(omega >= 0.0 && omega <= 1.0)) {
        throw std::invalid_argument("lost_info_curve: omega outside [0,1]");
    }
    if (q1_values.empty()) {
        throw std::invalid_argument("lost_info_curve: no q1 values");
    }
    for (double q1 : q1_values) {
        if (!(q1 >= 0.0 && q1 <= 1.0)) {
            throw std::invalid_argument("lost_info_curve: q1 outside [0,1]");
        }
    }
    SweepTable table({"p", "q1", "i_lost"});
    for (double p : p_grid) {
        const ChannelNoise channel(p);
        for (double q1 : q1_values) {
            const AttackChain chain({omega}, {q1, 1.0 - q1});
            table.add_row({SweepCell::number(p), SweepCell::number(q1),
                           SweepCell::number(lost_information(channel, chain))});
        }
    }
    return table;
}

SweepTable phase_boundary_2d(std::span<const double> p_grid, std::size_t n_eves,
                             const QRule& q_rule) {
    check_grid(p_grid, "phase_boundary_2d");
    SweepTable table({"p", "omega_star", "status"});
    for (double p : p_grid) {
        const PhaseBoundaryPoint point = critical_omega(p, n_eves, q_rule);
        if (point.status == BoundaryStatus::root) {
            table.add_row({SweepCell::number(p), SweepCell::number(point.omega_star),
                           SweepCell::text(to_label(point.status))});
        } else {
            table.add_row({SweepCell::number(p), SweepCell::blank(),
                           SweepCell::text(to_label(point.status))});
        }
    }
    return table;
}

SweepTable phase_surface_3d(std::span<const double> omega1_grid,
                            std::span<const double> omega2_grid, double p,
                            std::span<const double> qs) {
    check_grid(omega1_grid, "phase_surface_3d");
    check_grid(omega2_grid, "phase_surface_3d");
    if (qs.size() != 4) {
        throw std::invalid_argument(
            "phase_surface_3d: need four segment weights for three eavesdroppers");
    }
    const ChannelNoise channel(p);
    const std::vector<double> qs_vec(qs.begin(), qs.end());
    SweepTable table({"omega1", "omega2", "omega3_star", "status"});
    for (double w1 : omega1_grid) {
        for (double w2 : omega2_grid) {
            const auto margin = [&](double w3) {
                return security_margin(channel, AttackChain({w1, w2, w3}, qs_vec));
            };
            std::vector<SweepCell> row{SweepCell::number(w1), SweepCell::number(w2),
                                       SweepCell::blank(), SweepCell::blank()};
            if (margin(1.0) > 0.0) {
                row[3] = SweepCell::text(to_label(BoundaryStatus::all_secured));
            } else if (margin(0.0) <= 0.0) {
                row[3] = SweepCell::text(to_label(BoundaryStatus::all_unsecured));
            } else {
                row[2] = SweepCell::number(bisect_margin(margin, 0.0, 1.0));
                row[3] = SweepCell::text(to_label(BoundaryStatus::root));
            }
            table.add_row(std::move(row));
        }
    }
    return table;
}

double critical_noise_no_attack() {
    const AttackChain bare = no_attack();
    const auto margin = [&](double p) { return security_margin(ChannelNoise(p), bare); };
    // The flip rate 2p/3 reaches 1/2 at p = 3/4; beyond that the margin turns
    // back up, so the root is bracketed in [0, 3/4].
    return bisect_margin(margin, 0.0, 0.75);
}

std::vector<double> linspace(double lo, double hi, std::size_t points) {
    if (points == 0) {
        throw std::invalid_argument("linspace: need at least one point");
    }
    if (points == 1) {
        if (lo != hi) {
            throw std::invalid_argument("linspace: single point needs lo == hi");
        }
        return {lo};
    }
    if (!(hi > lo)) {
        throw std::invalid_argument("linspace: need hi > lo");
    }
    std::vector<double> grid(points);
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = lo + static_cast<double>(i) * step;
    }
    grid.back() = hi;
    return grid;
}

}  // namespace bb84sec
