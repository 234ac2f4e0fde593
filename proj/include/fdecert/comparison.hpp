#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace fdecert {

/**
 * Scalar comparison function of class K-infinity: continuous, strictly
 * increasing, zero at zero, unbounded. Membership cannot be proven from
 * samples, so validate() checks it on a finite grid and a doubling sequence
 * and rejects anything that visibly fails.
 *
 * An analytic inverse may be attached; inverse() uses it when present and
 * falls back to bracketed bisection otherwise.
 */
class KInfFn {
public:
  using Map = std::function<double(double)>;

  static constexpr double kDefaultDomainCap = 1e12;

  KInfFn(std::string name, Map eval, std::optional<Map> analytic_inverse = {},
         double domain_cap = kDefaultDomainCap);

  double eval(double s) const;
  double operator()(double s) const { return eval(s); }

  const std::string& name() const { return name_; }
  double domain_cap() const { return domain_cap_; }
  bool has_analytic_inverse() const { return inverse_.has_value(); }
  double analytic_inverse(double y) const;

  /// Sampling check of the class membership: f(0) = 0, strict increase on a
  /// uniform grid, strict increase along a doubling sequence up to the domain
  /// cap. Throws std::domain_error with the failing sample on rejection.
  void validate(int grid_points = 1000) const;

  /// Copy of this function with the analytic inverse dropped (numeric
  /// inversion is then forced; used to exercise that path in tests).
  KInfFn without_analytic_inverse() const;

private:
  std::string name_;
  Map eval_;
  std::optional<Map> inverse_;
  double domain_cap_;
};

// Named presets. The names reappear in scenario configs.
KInfFn kinf_identity();
KInfFn kinf_linear(double k);
KInfFn kinf_quadratic(double k);     // k * s^2
KInfFn kinf_power(double k, double p);  // k * s^p

/**
 * Solve f(s) = y for s >= 0. Uses the attached analytic inverse when
 * present. Otherwise brackets the root by doubling the upper end starting
 * from max(1, y), capped at f's domain cap, then bisects until the residual
 * satisfies |f(s) - y| <= tol * max(1, |y|) (at most 200 iterations).
 * Throws std::domain_error("not K-infinity on tested range") if no bracket
 * exists below the cap.
 */
double inverse(const KInfFn& f, double y, double tol = 1e-10);

/// delta(eps) = 1/2 * min(eps, a2^{-1}(a1(eps))); requires eps > 0.
/// Guarantees 0 < delta < eps and a2(delta) < a1(eps).
double delta_of_epsilon(const KInfFn& a1, const KInfFn& a2, double eps);

/// eps(eta) = 1/3 * min(eta, a2^{-1}(a1(eta))); requires eta > 0.
/// Guarantees a2(eps) < a1(eta).
double epsilon_of_eta(const KInfFn& a1, const KInfFn& a2, double eta);

/// Worst-case count of decrease cycles before the settling level is reached:
/// ceil( a2(delta)/a3(eps/2) * c_of_delta/eps ) + 1. Deliberately coarse; it
/// only needs to be finite and an upper bound. Throws std::overflow_error
/// when the value does not fit a 64-bit integer.
std::int64_t kappa_cycles(const KInfFn& a2, const KInfFn& a3, double c_of_delta,
                          double eps, double delta);

/// Settling-time bound beta = 2 * kappa * r (exact product; requires r > 0).
double settling_time_bound(std::int64_t kappa, double r);

/// Record of the derived constants for one query (eps, eta, delta).
struct StabilityConstants {
  double eps = 0.0;
  double eta = 0.0;
  double delta = 0.0;
  double delta_of_eps = 0.0;  // delta(eps), strictly below eps
  double eps_of_eta = 0.0;    // eps(eta)
  std::int64_t kappa = 0;     // cycles at (eps(eta), delta)
  double beta = 0.0;          // 2 * kappa * r
};

struct SettlingBound {
  double eps_eta = 0.0;
  std::int64_t kappa = 0;
  double beta = 0.0;
};

SettlingBound settling_bound(const KInfFn& a1, const KInfFn& a2, const KInfFn& a3,
                             double c_at_delta, double r, double eta, double delta);

}  // namespace fdecert
