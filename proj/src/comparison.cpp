#include "fdecert/comparison.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace fdecert {

KInfFn::KInfFn(std::string name, Map eval, std::optional<Map> analytic_inverse, double domain_cap)
    : name_(std::move(name)), eval_(std::move(eval)), inverse_(std::move(analytic_inverse)), domain_cap_(domain_cap) {
  if (!eval_) throw std::invalid_argument("KInfFn: eval is empty");
  if (!(domain_cap_ > 0.0)) throw std::invalid_argument("KInfFn: domain cap must be positive");
}

double KInfFn::eval(double s) const {
  if (s < 0.0) {
    if (s > -1e-12) s = 0.0;  // absorb sign noise from upstream arithmetic
    else throw std::domain_error("KInfFn '" + name_ + "': negative argument");
  }
  return eval_(s);
}

double KInfFn::analytic_inverse(double y) const {
  if (!inverse_) throw std::logic_error("KInfFn '" + name_ + "': no analytic inverse attached");
  return (*inverse_)(y);
}

KInfFn KInfFn::without_analytic_inverse() const { return KInfFn(name_, eval_, std::nullopt, domain_cap_); }

void KInfFn::validate(int grid_points) const {
  if (grid_points < 2) throw std::invalid_argument("KInfFn::validate: need at least 2 grid points");
  const double f0 = eval_(0.0);
  if (!(std::fabs(f0) <= 1e-12)) {
    throw std::domain_error("not K-infinity on tested range: '" + name_ + "' has f(0) != 0");
  }
  // Strict increase on a uniform grid over [0, min(cap, 1e6)].
  const double hi = std::min(domain_cap_, 1e6);
  double prev = f0;
  for (int i = 1; i <= grid_points; ++i) {
    const double s = hi * static_cast<double>(i) / static_cast<double>(grid_points);
    const double v = eval_(s);
    if (!(v > prev) || !std::isfinite(v)) {
      std::ostringstream os;
      os << "not K-infinity on tested range: '" << name_ << "' fails strict increase at s=" << s;
      throw std::domain_error(os.str());
    }
    prev = v;
  }
  // No plateau along a doubling sequence up to the cap (testable face of
  // unboundedness: raising the cap keeps raising the value).
  double s = 1.0;
  prev = eval_(s);
  while (s < domain_cap_) {
    s = std::min(s * 2.0, domain_cap_);
    const double v = eval_(s);
    if (!(v > prev) || !std::isfinite(v)) {
      std::ostringstream os;
      os << "not K-infinity on tested range: '" << name_ << "' plateaus near s=" << s;
      throw std::domain_error(os.str());
    }
    prev = v;
  }
}

KInfFn kinf_identity() {
  return KInfFn("identity", [](double s) { return s; }, [](double y) { return y; });
}

KInfFn kinf_linear(double k) {
  if (!(k > 0.0)) throw std::invalid_argument("linear preset: slope must be positive");
  return KInfFn("linear " + std::to_string(k), [k](double s) { return k * s; },
                [k](double y) { return y / k; });
}

KInfFn kinf_quadratic(double k) {
  if (!(k > 0.0)) throw std::invalid_argument("quadratic preset: coefficient must be positive");
  return KInfFn("quadratic " + std::to_string(k), [k](double s) { return k * s * s; },
                [k](double y) { return std::sqrt(y / k); });
}

KInfFn kinf_power(double k, double p) {
  if (!(k > 0.0) || !(p > 0.0)) throw std::invalid_argument("power preset: coefficient and exponent must be positive");
  return KInfFn("power " + std::to_string(p), [k, p](double s) { return k * std::pow(s, p); },
                [k, p](double y) { return std::pow(y / k, 1.0 / p); });
}

double inverse(const KInfFn& f, double y, double tol) {
  if (y < 0.0) throw std::domain_error("inverse: negative target");
  if (y == 0.0) return 0.0;
  if (f.has_analytic_inverse()) return f.analytic_inverse(y);

  const double residual_scale = std::max(1.0, std::fabs(y));
  double lo = 0.0;
  double hi = std::max(1.0, y);
  while (f.eval(hi) < y) {
    if (hi >= f.domain_cap()) {
      throw std::domain_error("not K-infinity on tested range: '" + f.name() +
                              "' stays below the inversion target up to the domain cap");
    }
    hi = std::min(hi * 2.0, f.domain_cap());
  }
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    const double v = f.eval(mid);
    if (std::fabs(v - y) <= tol * residual_scale) return mid;
    if (v < y) lo = mid;
    else hi = mid;
  }
  return mid;
}

double delta_of_epsilon(const KInfFn& a1, const KInfFn& a2, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("delta_of_epsilon: eps must be positive");
  return 0.5 * std::min(eps, inverse(a2, a1.eval(eps)));
}

double epsilon_of_eta(const KInfFn& a1, const KInfFn& a2, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("epsilon_of_eta: eta must be positive");
  return (1.0 / 3.0) * std::min(eta, inverse(a2, a1.eval(eta)));
}

std::int64_t kappa_cycles(const KInfFn& a2, const KInfFn& a3, double c_of_delta, double eps, double delta) {
  if (!(eps > 0.0) || !(delta > 0.0)) throw std::invalid_argument("kappa_cycles: eps and delta must be positive");
  if (!(c_of_delta > 0.0)) throw std::invalid_argument("kappa_cycles: c_of_delta must be positive");
  const double decay = a3.eval(eps / 2.0);
  if (!(decay > 0.0)) throw std::domain_error("kappa_cycles: a3(eps/2) is not positive");
  const double x = a2.eval(delta) / decay * (c_of_delta / eps);
  if (!std::isfinite(x) || x > 9.0e18) throw std::overflow_error("kappa_cycles: count exceeds 64-bit range");
  return static_cast<std::int64_t>(std::ceil(x)) + 1;
}

double settling_time_bound(std::int64_t kappa, double r) {
  if (kappa < 1) throw std::invalid_argument("settling_time_bound: kappa must be positive");
  if (!(r > 0.0)) throw std::invalid_argument("settling_time_bound: r must be positive");
  return 2.0 * static_cast<double>(kappa) * r;
}

SettlingBound settling_bound(const KInfFn& a1, const KInfFn& a2, const KInfFn& a3,
                             double c_at_delta, double r, double eta, double delta) {
  SettlingBound out;
  out.eps_eta = epsilon_of_eta(a1, a2, eta);
  out.kappa = kappa_cycles(a2, a3, c_at_delta, out.eps_eta, delta);
  out.beta = settling_time_bound(out.kappa, r);
  return out;
}

}  // namespace fdecert
