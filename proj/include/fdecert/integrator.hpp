#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "fdecert/history.hpp"
#include "fdecert/model.hpp"

namespace fdecert {

/**
 * Numerical solution on a fixed mesh covering [t0 - phi.span, end]. The
 * initial segment occupies the mesh up to t0; integration nodes follow at
 * spacing h (the final step may be shorter so the mesh ends exactly at the
 * horizon). Dense output is linear interpolation between nodes, matching the
 * interpolation the integrator itself uses for history lookups.
 *
 * Integration stops early when a state leaves the finite range (any
 * non-finite component or Euclidean norm above 1e9); the offending node is
 * kept and the trajectory is flagged.
 */
class Trajectory {
public:
  Trajectory() = default;

  double t0() const { return t0_; }
  double horizon() const { return horizon_; }
  double h() const { return h_; }
  int dim() const { return dim_; }
  double max_delay() const { return max_delay_; }
  bool blew_up() const { return blew_up_; }
  double blowup_time() const { return blowup_time_; }
  double end_time() const { return times_.back(); }

  const std::vector<double>& times() const { return times_; }
  std::size_t first_step_index() const { return first_step_index_; }
  const double* state(std::size_t i) const { return flat_.data() + i * static_cast<std::size_t>(dim_); }

  Vec state_at(double t) const;
  void state_at_into(double t, double* out) const;

  /// History window [t - span, t] as a segment; t must lie in [t0, end] and
  /// the window must stay inside the mesh.
  HistorySegment segment_at(double t, double span) const;

  /// Euclidean norm at every mesh node.
  std::vector<double> norm2_series() const;

  /// Running sup of the Euclidean norm over the trailing window of the given
  /// span, one entry per node from first_step_index() to the end.
  std::vector<double> window_sup_series(double span) const;

private:
  friend Trajectory integrate(const CaratheodoryRHS&, const HistorySegment&, double, double, double);

  double t0_ = 0.0, horizon_ = 0.0, h_ = 0.0;
  double max_delay_ = 0.0;
  int dim_ = 0;
  bool blew_up_ = false;
  double blowup_time_ = 0.0;
  std::size_t first_step_index_ = 0;
  std::vector<double> times_;
  std::vector<double> flat_;  // node-major states
};

/**
 * Classical RK4 with piecewise-linear history interpolation. Stage history
 * segments end at the stage abscissa with the in-flight stage state as the
 * endpoint value, so lookups at zero return the stage state exactly (keeping
 * the classical order on delay-free systems) and lookups that land inside
 * the current step read the chord toward that state. Requires
 * phi.span >= rhs.max_delay and, when the delay bound is positive,
 * h <= max_delay / 4.
 */
Trajectory integrate(const CaratheodoryRHS& rhs, const HistorySegment& phi, double t0,
                     double horizon, double h);

struct DeviationReport {
  double max_deviation = 0.0;  // max over shared mesh of |x_a - x_b|_2
  double rho = 0.0;            // disagreement measure supplied by the caller
  double k_constant = 0.0;     // max_deviation / (rho + h)
  bool blowup_a = false;
  bool blowup_b = false;
  double compared_until = 0.0;
};

/// Integrates the same initial data under two right-hand sides (typically a
/// glitched delay and its representative) and reports the worst pointwise
/// gap, normalized by rho + h.
DeviationReport ae_equivalence_deviation(const CaratheodoryRHS& rhs_a, const CaratheodoryRHS& rhs_b,
                                         const HistorySegment& phi, double t0, double horizon,
                                         double h, double rho);

struct ConvergenceEntry {
  double h_coarse = 0.0;
  double h_fine = 0.0;
  double err_coarse = 0.0;
  double err_fine = 0.0;
  std::optional<double> order;  // empty when the error pair is irregular
};

/// Self-convergence against the finest step in h_list (strictly decreasing,
/// at least three entries; nested steps recommended). Errors are measured on
/// the coarsest grid at exactly matching mesh nodes.
std::vector<ConvergenceEntry> convergence_study(const CaratheodoryRHS& rhs, const HistorySegment& phi,
                                                double t0, double horizon,
                                                const std::vector<double>& h_list);

struct LipschitzCheckResult {
  bool checked = false;  // false when no c_bound is available
  bool pass = true;
  double c_at_level = 0.0;
  double level = 0.0;        // delta used for the bound (observed sup + margin)
  double worst_excess = 0.0; // max of |x(t)-x(s)|_1 - c |t-s| - tol
  double worst_s = 0.0, worst_t = 0.0;
};

/// Verifies |x(t) - x(s)|_1 <= c(delta) |t - s| + tol for all computed mesh
/// pairs with |t - s| <= max_delay, with delta just above the observed sup of
/// the run. A failure indicates the declared bound and the integration
/// disagree and is surfaced as an internal inconsistency by callers.
LipschitzCheckResult check_trajectory_lipschitz(const Trajectory& traj, const CaratheodoryRHS& rhs,
                                                double tol);

/// Delimited table (header row, comma separated, 17 significant digits).
void write_trajectory_table(const Trajectory& traj, std::ostream& os);

}  // namespace fdecert
