// Acceptance gate: eleven self-contained criteria, one pass/fail line each.
// Run with no arguments for the full battery or with a single number to run
// one criterion.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "fdecert/certifier.hpp"
#include "fdecert/comparison.hpp"
#include "fdecert/dissipativity.hpp"
#include "fdecert/history.hpp"
#include "fdecert/integrator.hpp"
#include "fdecert/krasovskii.hpp"
#include "fdecert/model.hpp"
#include "fdecert/rng.hpp"
#include "fdecert/scenario.hpp"
#include "fdecert/signals.hpp"

using namespace fdecert;

namespace {

std::string fmt(const char* f, ...) {
  va_list args;
  va_start(args, f);
  char buf[768];
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

bool report(int n, const char* label, bool ok, const std::string& metrics) {
  std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", n, label, metrics.c_str());
  std::fflush(stdout);
  return ok;
}

DelaySignal varying_delay() {
  return piecewise_constant_delay({2.0, 4.0, 6.0}, {0.1, 0.3, 0.5, 0.2}, 0.1, 0.5);
}

CaratheodoryRHS delayed_contraction() {
  return linear_delay_rhs(Mat::from_rows({{-2.0}}), Mat::from_rows({{1.0}}), varying_delay());
}

CaratheodoryRHS scalar_ode(double a) {
  return linear_delay_rhs(Mat::from_rows({{a}}), Mat::zero(1, 1), constant_delay(0.1));
}

DistributedSystem gain_fixture() {
  auto u = std::make_shared<const InputSignal>(zero_input(1));
  auto w = std::make_shared<const DisturbanceSignal>(
      burst_train(1.0, 6.283185307179586, 1.0, 1.0, 1.0, 3));
  DistributedCoeffs coeffs;
  coeffs.a1 = Mat::from_rows({{-1.0}});
  coeffs.d1 = Mat::from_rows({{1.0}});
  OutputCoeffs oc;
  oc.c1 = Mat::from_rows({{1.0}});
  DistributedSystem sys;
  sys.rhs = distributed_delay_rhs(coeffs, constant_delay(0.1), u, w);
  sys.output = output_map(oc, constant_delay(0.1), u, w);
  sys.u = u;
  sys.w = w;
  return sys;
}

// 1. Derived radii: delta(eps) sits strictly inside (0, eps) with
// a2(delta) < a1(eps), and eps(eta) satisfies a2(eps(eta)) < a1(eta), on a
// 100-point grid for three comparison-function pairs.
bool criterion_1() {
  struct FnPair {
    KInfFn a1, a2;
  };
  const FnPair pairs[] = {
      {kinf_quadratic(1.0), kinf_quadratic(4.0)},
      {kinf_linear(1.0), kinf_linear(3.0)},
      {kinf_quadratic(0.5), kinf_power(2.0, 3.0)},
  };
  std::vector<double> eps_grid, eta_grid;
  for (int i = 0; i < 10; ++i) {
    eps_grid.push_back(std::pow(10.0, -3.0 + 5.0 * i / 9.0));
    eta_grid.push_back(std::pow(10.0, -2.5 + 4.0 * i / 9.0));
  }
  long checks = 0;
  long failures = 0;
  for (const auto& p : pairs) {
    for (double eps : eps_grid) {
      for (double eta : eta_grid) {
        const double delta = delta_of_epsilon(p.a1, p.a2, eps);
        checks += 3;
        if (!(delta > 0.0 && delta < eps)) ++failures;
        if (!(p.a2(delta) < p.a1(eps))) ++failures;
        const double e = epsilon_of_eta(p.a1, p.a2, eta);
        checks += 2;
        if (!(e > 0.0)) ++failures;
        if (!(p.a2(e) < p.a1(eta))) ++failures;
      }
    }
  }
  return report(1, "derived radii respect their strict inequalities", failures == 0,
                fmt("%ld checks over 3 pairs x 100 grid points, %ld failures", checks, failures));
}

// 2. Integrator fixtures with hand-computed values.
bool criterion_2() {
  const auto ode = scalar_ode(-1.0);
  const auto traj1 =
      integrate(ode, HistorySegment::constant(0.1, Vec{1.0}, 4), 0.0, 1.0, 0.01);
  const double err1 = std::abs(traj1.state_at(1.0)[0] - std::exp(-1.0));

  const auto lag = linear_delay_rhs(Mat::zero(1, 1), Mat::from_rows({{-1.0}}),
                                    constant_delay(1.0));
  const auto traj2 =
      integrate(lag, HistorySegment::constant(1.0, Vec{1.0}, 8), 0.0, 2.0, 0.01);
  const double err_mid = std::abs(traj2.state_at(1.0)[0] - 0.0);
  const double err_end = std::abs(traj2.state_at(2.0)[0] - (-0.5));

  const bool ok = err1 <= 1e-6 && err_mid <= 1e-4 && err_end <= 1e-4;
  return report(2, "integration matches closed-form fixtures", ok,
                fmt("|x(1)-1/e|=%.2e, step-method errors %.2e and %.2e", err1, err_mid, err_end));
}

// 3. Glitched vs representative delay: deviation bounded by K (rho + h) with
// measured K, shrinking with the glitch measure.
bool criterion_3() {
  const auto base = varying_delay();
  const Mat a1m = Mat::from_rows({{-2.0}});
  const Mat a2m = Mat::from_rows({{1.0}});
  const auto repr_rhs = linear_delay_rhs(a1m, a2m, base);
  Rng prng(501);
  const auto phi = random_segment(1, 0.5, 1.0, 12, prng);

  const double h = 1e-3;
  const double rho_list[] = {1e-2, 1e-3, 1e-4};
  const int counts[] = {20, 2, 1};
  const std::uint64_t seeds[] = {7001, 7002, 7003};
  double dev[3] = {0, 0, 0};
  double k[3] = {0, 0, 0};
  for (int i = 0; i < 3; ++i) {
    const auto glitches = random_glitch_intervals(rho_list[i], counts[i], 0.5, 9.5, seeds[i]);
    const auto glitched = glitched_delay(base, glitches, 0.45);
    const auto rhs = linear_delay_rhs(a1m, a2m, glitched);
    const auto rep = ae_equivalence_deviation(rhs, repr_rhs, phi, 0.0, 10.0, h, rho_list[i]);
    dev[i] = rep.max_deviation;
    k[i] = rep.k_constant;
  }
  const double kmax = std::max({k[0], k[1], k[2]});
  bool ok = kmax > 0.0 && kmax < 1e3;
  for (int i = 0; i < 3; ++i) ok = ok && dev[i] <= kmax * (rho_list[i] + h) * (1 + 1e-12);
  ok = ok && dev[1] <= 1.1 * dev[0] && dev[2] <= 1.1 * dev[1];
  return report(3, "deviation scales with the glitch measure", ok,
                fmt("dev=%.3e/%.3e/%.3e at rho=1e-2/1e-3/1e-4, K=%.3g/%.3g/%.3g", dev[0], dev[1],
                    dev[2], k[0], k[1], k[2]));
}

// 4. The atom-sifting evaluator reproduces the direct delay evaluator bit for
// bit on random inputs.
bool criterion_4() {
  const Mat a1m = Mat::from_rows({{-1.0, 0.2}, {0.1, -0.8}});
  const Mat a2m = Mat::from_rows({{0.3, -0.1}, {0.05, 0.2}});
  const auto delay = piecewise_constant_delay({3.0}, {0.2, 0.35}, 0.1, 0.5);
  const auto direct = linear_delay_rhs(a1m, a2m, delay);
  const auto atom = stieltjes_rhs(a1m, a2m, delay, 0.5);
  Rng rng(77);
  long mismatches = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const double t = rng.uniform(0.0, 10.0);
    const auto phi = random_segment(2, 0.5, 3.0, 10, rng);
    if (direct.eval(t, phi) != atom.eval(t, phi)) ++mismatches;
  }
  return report(4, "measure-form evaluator is bitwise equal to the direct form", mismatches == 0,
                fmt("%d random (t, phi) probes, %ld mismatches", n, mismatches));
}

// 5. Certificates land on the right side for known systems, and the
// certified delayed system is cross-checked against a long-horizon decay
// oracle.
bool criterion_5() {
  CertifyParams params;
  const QuadraticFunctional v1(Mat::from_rows({{1.0}}), {}, {}, 0.0);

  const auto good = stability_certificate(scalar_ode(-1.0), v1, kinf_quadratic(2.0), params);
  const auto bad = stability_certificate(scalar_ode(1.0), v1, kinf_quadratic(2.0), params);

  const auto drhs = delayed_contraction();
  const QuadraticFunctional vd(Mat::from_rows({{1.0}}), Mat::from_rows({{1.0}}), {}, 0.5);
  const auto dcert = stability_certificate(drhs, vd, kinf_quadratic(0.5), params);

  Rng orng(611);
  double worst_ratio = 0.0;
  bool oracle_ok = true;
  for (int i = 0; i < 100; ++i) {
    const auto phi = random_segment(1, 0.5, 1.0, 12, orng);
    const auto traj = integrate(drhs, phi, 0.0, 20.0, 0.01);
    if (traj.blew_up() || phi.sup_norm() <= 0.0) {
      oracle_ok = false;
      break;
    }
    worst_ratio = std::max(worst_ratio, traj.window_sup_series(0.5).back() / phi.sup_norm());
  }
  oracle_ok = oracle_ok && worst_ratio <= 0.01;

  const bool ok = std::string(certificate_verdict(good)) == "certified-GUAS-evidence" &&
                  std::string(certificate_verdict(bad)) == "refuted" &&
                  std::string(certificate_verdict(dcert)) == "certified-GUAS-evidence" && oracle_ok;
  return report(5, "certificates agree with known stability and a decay oracle", ok,
                fmt("verdicts: %s / %s / %s; oracle worst end/start ratio %.2e over 100 runs",
                    certificate_verdict(good), certificate_verdict(bad),
                    certificate_verdict(dcert), worst_ratio));
}

// 6. Sandwich inequality on random segments for every shipped functional.
bool criterion_6() {
  struct Shipped {
    const char* name;
    QuadraticFunctional v;
    double seg_span;
  };
  const Shipped shipped[] = {
      {"pointwise", QuadraticFunctional(Mat::from_rows({{1.0}}), {}, {}, 0.0), 0.25},
      {"running-integral",
       QuadraticFunctional(Mat::from_rows({{1.0}}), Mat::from_rows({{1.0}}), {}, 0.5), 0.5},
      {"double-integral",
       QuadraticFunctional(Mat::from_rows({{1.0}}), {}, Mat::from_rows({{0.12}}), 1.0), 1.0},
  };
  const TolerancePolicy pol;
  Rng rng(903);
  double worst = -1e300;
  long failures = 0;
  for (const auto& s : shipped) {
    const auto [a1, a2] = sandwich_bounds(s.v);
    for (int i = 0; i < 1000; ++i) {
      const auto phi = random_segment(1, s.seg_span, 2.0, 16, rng);
      const double val = eval_functional(s.v, phi);
      const double lo = a1(std::abs(phi.value_at_zero()[0]));
      const double hi = a2(phi.sup_norm());
      const double excess = std::max(lo - val, val - hi);
      worst = std::max(worst, excess);
      if (excess > pol.band(std::max(1.0, std::abs(val)))) ++failures;
    }
  }
  return report(6, "sandwich bounds hold on random segments", failures == 0,
                fmt("3 functionals x 1000 segments, worst excess %.2e, %ld failures", worst,
                    failures));
}

// 7. Analytic equality case of the integrated decrease.
bool criterion_7() {
  const auto rhs = scalar_ode(-1.0);
  const QuadraticFunctional v(Mat::from_rows({{1.0}}), {}, {}, 0.0);
  const auto traj = integrate(rhs, HistorySegment::constant(0.1, Vec{1.0}, 4), 0.0, 2.0, 1e-3);
  const auto windows = certified_window_ladder(traj, 0.0, 6);
  const auto rep = decrease_check(v, kinf_quadratic(2.0), traj, windows, 1e-6);
  double worst = 0.0;
  for (const auto& w : rep.windows) worst = std::max(worst, std::abs(w.lhs - w.rhs));
  const bool ok = rep.pass && worst <= 1e-6;
  return report(7, "integrated decrease reaches equality on the matched pair", ok,
                fmt("%zu windows, max |lhs - rhs| = %.2e", rep.windows.size(), worst));
}

// 8. Increment bound on certified runs: |x(t) - x(s)|_1 <= c(delta) |t - s|
// within one delay span.
bool criterion_8() {
  struct Case {
    const char* name;
    CaratheodoryRHS rhs;
    double seg_span;
  };
  const Case cases[] = {
      {"contracting-ode", scalar_ode(-1.0), 0.1},
      {"delayed", delayed_contraction(), 0.5},
      {"glitched",
       linear_delay_rhs(Mat::from_rows({{-2.0}}), Mat::from_rows({{1.0}}),
                        glitched_delay(varying_delay(),
                                       random_glitch_intervals(1e-3, 2, 0.5, 9.5, 4242), 0.45)),
       0.5},
  };
  bool ok = true;
  double worst = -1e300;
  int runs = 0;
  for (const auto& c : cases) {
    Rng rng(801);
    for (int i = 0; i < 4; ++i) {
      const auto phi = random_segment(1, c.seg_span, 1.0, 12, rng);
      const auto traj = integrate(c.rhs, phi, 0.0, 10.0, 0.01);
      const auto lip = check_trajectory_lipschitz(traj, c.rhs, 1e-6);
      ok = ok && lip.checked && lip.pass && !traj.blew_up();
      worst = std::max(worst, lip.worst_excess);
      ++runs;
    }
  }
  return report(8, "trajectory increments respect the derivative bound", ok,
                fmt("%d runs over 3 systems, worst excess %.2e", runs, worst));
}

// 9. The derived settling horizon covers the observed reach-and-stay times,
// with the conservativeness ratio reported.
bool criterion_9() {
  CertifyParams params;
  params.n_phi = 6;

  const QuadraticFunctional v1(Mat::from_rows({{1.0}}), {}, {}, 0.0);
  const auto s_ode =
      settling_consistency(scalar_ode(-1.0), v1, kinf_quadratic(2.0), 0.1, params);

  const QuadraticFunctional vd(Mat::from_rows({{1.0}}), Mat::from_rows({{1.0}}), {}, 0.5);
  const auto s_del =
      settling_consistency(delayed_contraction(), vd, kinf_quadratic(0.5), 0.1, params);

  const bool ok = s_ode.status == CheckStatus::Pass && s_del.status == CheckStatus::Pass &&
                  s_ode.conservativeness >= 1.0 && s_del.conservativeness >= 1.0;
  return report(9, "settling bound covers every observed settling time", ok,
                fmt("conservativeness beta/observed: %.3g (ode, beta=%.4g) and %.3g "
                    "(delayed, beta=%.4g)",
                    s_ode.conservativeness, s_ode.bound.beta, s_del.conservativeness,
                    s_del.bound.beta));
}

// 10. Finite-gain checks around the unit-gain scalar plant: gamma = 2 passes
// and gamma = 0.1 fails, in both the windowed and the rate form.
bool criterion_10() {
  const auto sys = gain_fixture();
  const QuadraticFunctional v(Mat::from_rows({{1.0}}), {}, {}, 0.0);
  const auto traj =
      integrate(sys.rhs, HistorySegment::constant(0.1, Vec{0.0}, 4), 0.0, 8.0, 0.01);
  const auto windows = certified_window_ladder(traj, 0.0, 6);
  const double tol = 20.0 * 0.01 * 0.01;
  const TolerancePolicy pol;

  const auto pass_int = check_dissipativity(sys, v, l2_gain_supply(2.0), traj, windows, tol, pol);
  const auto pass_diff = differential_form_check(sys, v, l2_gain_supply(2.0), traj, tol, pol);
  const auto fail_int = check_dissipativity(sys, v, l2_gain_supply(0.1), traj, windows, tol, pol);
  const auto fail_diff = differential_form_check(sys, v, l2_gain_supply(0.1), traj, tol, pol);

  const bool ok = pass_int.status == CheckStatus::Pass && pass_diff.status == CheckStatus::Pass &&
                  fail_int.status == CheckStatus::Violation &&
                  fail_diff.status == CheckStatus::Violation;
  return report(10, "gain checks bracket the unit-gain plant", ok,
                fmt("gamma=2: excess %.2e (windows) %.2e (rate); gamma=0.1: excess %.2e / %.2e",
                    pass_int.worst_excess, pass_diff.worst_rate_excess, fail_int.worst_excess,
                    fail_diff.worst_rate_excess));
}

// 11. Every shipped scenario is reproducible byte for byte at a fixed seed.
bool criterion_11() {
  bool ok = true;
  std::string detail;
  for (const auto& name : preset_names()) {
    const auto first = run_scenario(preset_config(name), name);
    const auto second = run_scenario(preset_config(name), name);
    const bool same = first.results_json == second.results_json &&
                      first.report_text == second.report_text && first.tables == second.tables;
    ok = ok && same;
    if (!detail.empty()) detail += ", ";
    detail += name + (same ? "=stable" : "=DRIFTS");
  }
  return report(11, "shipped scenarios are deterministic", ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
  using Criterion = bool (*)();
  const std::pair<int, Criterion> all[] = {
      {1, criterion_1}, {2, criterion_2},  {3, criterion_3},  {4, criterion_4},
      {5, criterion_5}, {6, criterion_6},  {7, criterion_7},  {8, criterion_8},
      {9, criterion_9}, {10, criterion_10}, {11, criterion_11},
  };
  const int selected = argc > 1 ? std::atoi(argv[1]) : 0;
  bool ok = true;
  bool ran = false;
  for (const auto& [num, fn] : all) {
    if (selected != 0 && num != selected) continue;
    ran = true;
    ok = fn() && ok;
  }
  if (!ran) {
    std::fprintf(stderr, "unknown criterion %d\n", selected);
    return 2;
  }
  return ok ? 0 : 1;
}
