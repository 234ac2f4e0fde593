#pragma once

#include <functional>
#include <vector>

#include "fdecert/linalg.hpp"
#include "fdecert/rng.hpp"

namespace fdecert {

/**
 * State history over a window [-span, 0]: a piecewise-linear interpolant
 * through mesh nodes theta_0 = -span < ... < theta_{K-1} = 0. Values are
 * stored flat (node-major) so rebuilding a segment in a hot loop does not
 * allocate once capacity is established.
 *
 * eval clamps its argument into [-span, 0]; lookups generated by delay
 * signals respect the span by construction, so the clamp only absorbs
 * floating-point edge noise.
 */
class HistorySegment {
public:
  HistorySegment() = default;
  HistorySegment(double span, std::vector<double> theta, std::vector<double> flat_values, int dim);

  static HistorySegment constant(double span, const Vec& value, int knots = 2);
  static HistorySegment from_function(double span, int dim,
                                      const std::function<Vec(double)>& f, int knots);

  double span() const { return span_; }
  int dim() const { return dim_; }
  std::size_t knots() const { return theta_.size(); }
  const std::vector<double>& mesh_theta() const { return theta_; }

  Vec eval(double theta) const;
  void eval_into(double theta, double* out) const;
  Vec value_at_zero() const;
  const double* node_value(std::size_t k) const { return values_.data() + k * static_cast<std::size_t>(dim_); }

  /// max over mesh nodes of the Euclidean norm; equals the sup over the
  /// window for a piecewise-linear interpolant.
  double sup_norm() const;

  /// Recorded local slope bound L: max over intervals of |dv|_2 / dtheta.
  double local_slope_bound() const;

  /// Replace the contents in place, reusing capacity. absolute_times must be
  /// ascending and end at t_end; node k stores states row k.
  void reset_from_window(double span, int dim, const std::vector<double>& absolute_times,
                         const std::vector<double>& flat_states, double t_end);

private:
  void check() const;

  double span_ = 0.0;
  int dim_ = 0;
  std::vector<double> theta_;
  std::vector<double> values_;  // knots x dim, node-major
};

/// Piecewise-linear segment with `knots` nodes; node values are drawn
/// uniformly in the coordinate box of half-width delta, projected onto the
/// Euclidean delta-ball where needed, then shrunk slightly so the sup norm is
/// strictly below delta. Reproducible from the Rng state alone.
HistorySegment random_segment(int dim, double span, double delta, int knots, Rng& rng);

}  // namespace fdecert
