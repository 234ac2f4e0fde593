#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fdecert/certifier.hpp"
#include "fdecert/integrator.hpp"
#include "fdecert/krasovskii.hpp"
#include "fdecert/linalg.hpp"
#include "fdecert/model.hpp"

namespace fdecert {

/// Power supplied to the system by the pair (disturbance w, output z).
struct SupplyRate {
  std::string kind;
  double gamma = 0.0;  // meaningful for the gain form only
  std::function<double(const Vec& w, const Vec& z)> eval;
};

/// s(w, z) = gamma^2 |w|_2^2 - |z|_2^2: dissipativity with this supply is the
/// finite-gain property with gain at most gamma.
SupplyRate l2_gain_supply(double gamma);

/// s(w, z) = z' w, for matching disturbance and output dimensions.
SupplyRate passivity_supply();

struct DissipationWindow {
  double s = 0.0, t = 0.0;
  double storage_change = 0.0;  // v(t, x_t) - v(s, x_s)
  double supplied = 0.0;        // integral of the supply rate over [s, t]
  double deficit = 0.0;         // storage_change - supplied
  double allowed = 0.0;         // tol * (1 + |v(s, x_s)|)
  bool pass = true;
};

struct DissipativityReport {
  CheckStatus status = CheckStatus::Pass;
  double worst_excess = 0.0;  // max over windows of deficit - allowed
  std::vector<DissipationWindow> windows;
};

/**
 * Integrated dissipation inequality along a computed trajectory of the
 * system: on each window, the storage increase must not exceed the supplied
 * energy, up to tol * (1 + |v(s, x_s)|) of quadrature allowance. Window
 * endpoints must be mesh nodes at least one memory span past t0.
 */
DissipativityReport check_dissipativity(const DistributedSystem& sys, const QuadraticFunctional& v,
                                        const SupplyRate& supply, const Trajectory& traj,
                                        const std::vector<std::pair<double, double>>& windows,
                                        double tol, const TolerancePolicy& pol);

struct DifferentialFormReport {
  CheckStatus status = CheckStatus::Pass;
  double width = 0.0;         // micro-window width actually used
  std::size_t n_windows = 0;
  double worst_rate_excess = 0.0;  // max of dv/dt - avg supply - tol
  double worst_at = 0.0;
};

/**
 * Rate form of the same inequality: difference quotients of the storage over
 * mesh-aligned micro windows (at least two steps wide, so the quotient is
 * meaningful against the quadrature of the supply) must not exceed the
 * average supply rate plus tol.
 */
DifferentialFormReport differential_form_check(const DistributedSystem& sys,
                                               const QuadraticFunctional& v,
                                               const SupplyRate& supply, const Trajectory& traj,
                                               double tol, const TolerancePolicy& pol);

}  // namespace fdecert
