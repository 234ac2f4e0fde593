#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fdecert/comparison.hpp"
#include "fdecert/history.hpp"
#include "fdecert/integrator.hpp"
#include "fdecert/linalg.hpp"

namespace fdecert {

/**
 * Memory functional of quadratic type on histories over [-r, 0]:
 *
 *   v(phi) = phi(0)' P phi(0)
 *          + int_{-r}^0 phi(s)' Q phi(s) ds
 *          + int_{-r}^0 int_theta^0 phi(s)' R phi(s) ds dtheta.
 *
 * The double integral is evaluated in its collapsed single-integral form
 * with weight (s + r) (swap the order of integration; theta runs over
 * [-r, s] for fixed s). P must be symmetric positive definite; Q and R,
 * when present, symmetric positive semidefinite. Symmetry is exact,
 * definiteness is checked through the eigensolver.
 */
class QuadraticFunctional {
public:
  QuadraticFunctional(Mat p, std::optional<Mat> q, std::optional<Mat> r_weight, double span);

  const Mat& p() const { return p_; }
  const std::optional<Mat>& q() const { return q_; }
  const std::optional<Mat>& r_weight() const { return r_weight_; }
  double span() const { return span_; }
  int dim() const { return p_.rows(); }

  double lambda_min_p() const { return lambda_min_p_; }
  double lambda_max_p() const { return lambda_max_p_; }
  double lambda_max_q() const { return lambda_max_q_; }
  double lambda_max_r() const { return lambda_max_r_; }

private:
  Mat p_;
  std::optional<Mat> q_;
  std::optional<Mat> r_weight_;
  double span_;
  double lambda_min_p_, lambda_max_p_, lambda_max_q_, lambda_max_r_;
};

/// v(t, phi); the memory integrals use the composite trapezoid rule over the
/// segment mesh restricted to [-span, 0] (interpolated node at -span when
/// the segment reaches further back).
double eval_functional(const QuadraticFunctional& v, const HistorySegment& phi);

/// Bounds a1(s) = lambda_min(P) s^2 and
/// a2(s) = (lambda_max(P) + r lambda_max(Q) + r^2/2 lambda_max(R)) s^2 with
/// a1(|phi(0)|_2) <= v(phi) <= a2(sup |phi|_2). Both come back with analytic
/// inverses. Throws std::domain_error when P is not positive definite.
std::pair<KInfFn, KInfFn> sandwich_bounds(const QuadraticFunctional& v);

struct WindowCheck {
  double s = 0.0, t = 0.0;
  double lhs = 0.0;      // v(t, x_t) - v(s, x_s)
  double rhs = 0.0;      // minus the integral of a3(|x|_2) over [s, t]
  double deficit = 0.0;  // lhs - rhs; <= allowed means the window passes
  double allowed = 0.0;  // tol * (1 + |v(s, x_s)|)
  bool pass = true;
};

struct DecreaseReport {
  bool pass = true;
  double worst_deficit = 0.0;   // max over windows of deficit - allowed
  std::size_t worst_index = 0;
  std::vector<WindowCheck> windows;
};

/**
 * Integrated decrease test along a computed trajectory: on each window
 * (s, t), v(t, x_t) - v(s, x_s) <= -int_s^t a3(|x(tau)|_2) dtau up to
 * tol * (1 + |v(s, x_s)|). tol absorbs the quadrature error of both sides;
 * window ends must lie in [t0 + span, end].
 */
DecreaseReport decrease_check(const QuadraticFunctional& v, const KInfFn& a3, const Trajectory& traj,
                              const std::vector<std::pair<double, double>>& windows, double tol);

/// Adjacent windows of the given count over [lo, hi] plus the cumulative
/// prefixes: the ladder used by the certification pass.
std::vector<std::pair<double, double>> window_ladder(double lo, double hi, int rungs);

}  // namespace fdecert
