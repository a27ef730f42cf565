#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bb84sec/assessment.hpp"
#include "bb84sec/sweep_table.hpp"

namespace bb84sec {

// How the noise-placement weights are chosen when a sweep varies the number
// of eavesdroppers: uniform 1/(N+1) over the segments, or an explicit vector
// (which then pins N = size-1).
class QRule {
public:
    static QRule uniform();
    static QRule explicit_qs(std::vector<double> qs);

    bool is_uniform() const { return !qs_.has_value(); }
    // Weights for a chain of n_eves eavesdroppers.  For an explicit rule the
    // stored vector must have n_eves+1 entries; throws std::invalid_argument
    // otherwise.
    std::vector<double> resolve(std::size_t n_eves) const;

private:
    QRule() = default;
    std::optional<std::vector<double>> qs_;
};

enum class BoundaryStatus { root, all_secured, all_unsecured };

// Label used in CSV output: "ok", "all_secured", "all_unsecured".
const std::string& to_label(BoundaryStatus status);

struct PhaseBoundaryPoint {
    double p;
    BoundaryStatus status;
    double omega_star;  // meaningful only when status == root
};

struct QberPoint {
    double p;
    BoundaryStatus status;
    double omega_star;        // threshold interception probability
    double qber;              // attack-added error rate at the threshold
    SecurityAssessment at_threshold;
};

// Interval width at which the bisection stops.
inline constexpr double kBisectionTolerance = 1e-10;
// The returned root must satisfy |margin| < this, or the bracket is rejected.
inline constexpr double kRootResidualTolerance = 1e-8;

// Threshold interception probability for N identical eavesdroppers at noise
// level p: the omega where security_margin crosses zero when every omega_i
// is set to the same value.  margin(1) > 0 reports all_secured, margin(0) <= 0
// all_unsecured, otherwise bisection to kBisectionTolerance.
PhaseBoundaryPoint critical_omega(double p, std::size_t n_eves, const QRule& q_rule);

// Full assessment at the threshold found by critical_omega; status forwards
// the no-threshold sentinels, in which case the numeric fields are unset.
QberPoint qber_at(double p, std::size_t n_eves, const QRule& q_rule);

// Columns: p,omega_star,qber,i_ab,i_ae_max,h_delta,status.  Sentinel rows
// keep p, h_delta and status and leave the threshold-dependent cells blank.
SweepTable qber_curve(std::span<const double> p_grid, std::size_t n_eves,
                      const QRule& q_rule);

// Columns: p,q1,i_lost for a single eavesdropper with fixed omega; one row
// per (p, q1) pair, grid order preserved, q1 fastest.
SweepTable lost_info_curve(std::span<const double> p_grid, double omega,
                           std::span<const double> q1_values);

// Columns: p,omega_star,status.
SweepTable phase_boundary_2d(std::span<const double> p_grid, std::size_t n_eves,
                             const QRule& q_rule);

// Three eavesdroppers, omega_1 and omega_2 swept, threshold solved for
// omega_3 at fixed p and qs.  Columns: omega1,omega2,omega3_star,status;
// omega2 fastest.
SweepTable phase_surface_3d(std::span<const double> omega1_grid,
                            std::span<const double> omega2_grid, double p,
                            std::span<const double> qs);

// Noise level at which the channel alone eats the whole key: root of
// H(2p/3) = 1/2, the no-attack limit of every phase boundary.
double critical_noise_no_attack();

// Inclusive evenly spaced grid with `points` entries (points >= 2, or
// points == 1 with lo == hi).
std::vector<double> linspace(double lo, double hi, std::size_t points);

}  // namespace bb84sec
