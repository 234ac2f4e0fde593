#include "fdecert/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fdecert/history.hpp"
#include "fdecert/rng.hpp"

namespace fdecert {

namespace {

constexpr std::uint64_t kSandwichStream = 0x5a4d;
constexpr std::uint64_t kDecreaseStream = 0xdec4;
constexpr std::uint64_t kProbeStream = 0x9a0b;
constexpr std::uint64_t kSettleStream = 0x5e77;
constexpr std::uint64_t kClassifyStream = 0xc1a5;

// Segments must reach back far enough for both the dynamics and the
// functional's memory; memoryless models still need a nonempty window.
double segment_span(const CaratheodoryRHS& rhs, double functional_span) {
  const double s = std::max(rhs.max_delay(), functional_span);
  return s > 0.0 ? s : 1.0;
}

double snap_to_mesh(const std::vector<double>& times, double t) {
  auto it = std::lower_bound(times.begin(), times.end(), t);
  if (it == times.end()) return times.back();
  if (it == times.begin()) return times.front();
  return (*it - t < t - *(it - 1)) ? *it : *(it - 1);
}

std::vector<std::pair<double, double>> mesh_ladder(const Trajectory& traj, double span, int rungs) {
  const double lo = traj.t0() + span;
  const double hi = traj.end_time();
  if (!(hi > lo)) {
    throw std::invalid_argument("run too short for decrease windows: need horizon past t0 + span");
  }
  auto raw = window_ladder(lo, hi, rungs);
  std::vector<std::pair<double, double>> snapped;
  snapped.reserve(raw.size());
  for (auto [a, b] : raw) {
    const double sa = snap_to_mesh(traj.times(), a);
    const double sb = snap_to_mesh(traj.times(), b);
    if (sb > sa) snapped.emplace_back(sa, sb);
  }
  return snapped;
}

double default_decrease_tol(double h) { return 20.0 * h * h; }

}  // namespace

std::vector<std::pair<double, double>> certified_window_ladder(const Trajectory& traj, double span,
                                                               int rungs) {
  return mesh_ladder(traj, span, rungs);
}

namespace {

// settle_time: first mesh time after which |x|_2 never again exceeds eta.
// Returns false when the final node is still outside the eta-ball.
bool settle_time_of(const Trajectory& traj, double eta, double* out) {
  const auto norms = traj.norm2_series();
  const auto& times = traj.times();
  std::size_t last_exceed = norms.size();  // sentinel: never exceeded
  for (std::size_t i = norms.size(); i-- > 0;) {
    if (norms[i] > eta) {
      last_exceed = i;
      break;
    }
  }
  if (last_exceed == norms.size()) {
    *out = traj.t0();
    return true;
  }
  if (last_exceed + 1 >= norms.size()) return false;
  *out = times[last_exceed + 1];
  return true;
}

}  // namespace

const char* status_label(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Inconclusive:
      return "inconclusive";
    default:
      return "violation";
  }
}

CheckStatus combine(CheckStatus a, CheckStatus b) {
  if (a == CheckStatus::Violation || b == CheckStatus::Violation) return CheckStatus::Violation;
  if (a == CheckStatus::Inconclusive || b == CheckStatus::Inconclusive)
    return CheckStatus::Inconclusive;
  return CheckStatus::Pass;
}

double TolerancePolicy::band(double scale) const { return abs_slack + rel_slack * std::abs(scale); }

CheckStatus TolerancePolicy::judge(double excess, double scale) const {
  if (excess <= 0.0) return CheckStatus::Pass;
  if (excess <= band(scale)) return CheckStatus::Inconclusive;
  return CheckStatus::Violation;
}

CertificateReport stability_certificate(const CaratheodoryRHS& rhs, const QuadraticFunctional& v,
                                        const KInfFn& a3, const CertifyParams& params) {
  if (rhs.dim() != v.dim()) throw std::invalid_argument("system/functional dimension mismatch");
  a3.validate();
  auto [a1, a2] = sandwich_bounds(v);

  CertificateReport rep;
  rep.decrease_tol_used =
      params.decrease_tol >= 0.0 ? params.decrease_tol : default_decrease_tol(params.h);

  // Growth bound on random segments in the delta-ball.
  rep.bound = verify_caratheodory_bound(rhs, params.delta, params.n_bound_samples, params.seed);
  if (!rep.bound.bound_available) {
    rep.bound_status = CheckStatus::Inconclusive;
  } else {
    rep.bound_status = params.tol.judge(rep.bound.max_ratio - 1.0, 1.0);
  }

  // Sandwich inequalities on segments with sup norm below 10.
  const double span = segment_span(rhs, v.span());
  rep.sandwich_status = CheckStatus::Pass;
  double sandwich_worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < params.n_phi; ++i) {
    Rng rng(mix_seed(params.seed, kSandwichStream, static_cast<std::uint64_t>(i)));
    const auto phi = random_segment(v.dim(), span, 10.0, params.knots, rng);
    SandwichSample s;
    s.phi0_norm = norm2(phi.value_at_zero());
    s.sup_norm = phi.sup_norm();
    s.value = eval_functional(v, phi);
    s.lower = a1.eval(s.phi0_norm);
    s.upper = a2.eval(s.sup_norm);
    s.excess = std::max(s.lower - s.value, s.value - s.upper);
    s.status = params.tol.judge(s.excess, std::max(1.0, std::abs(s.value)));
    sandwich_worst = std::max(sandwich_worst, s.excess);
    rep.sandwich_status = combine(rep.sandwich_status, s.status);
    rep.sandwich.push_back(s);
  }
  rep.sandwich_worst = rep.sandwich.empty() ? 0.0 : sandwich_worst;

  // Integrated decrease along simulated runs, with the increment consistency
  // check piggybacking on the same trajectories.
  rep.decrease_status = CheckStatus::Pass;
  rep.lipschitz_status = CheckStatus::Pass;
  double decrease_worst = -std::numeric_limits<double>::infinity();
  bool lipschitz_done = false;
  for (int i = 0; i < params.n_phi; ++i) {
    Rng rng(mix_seed(params.seed, kDecreaseStream, static_cast<std::uint64_t>(i)));
    const auto phi = random_segment(v.dim(), span, params.delta, params.knots, rng);
    const auto traj = integrate(rhs, phi, 0.0, params.horizon, params.h);
    DecreaseRun run;
    run.phi_index = static_cast<std::size_t>(i);
    run.blew_up = traj.blew_up();
    if (traj.blew_up()) {
      run.status = CheckStatus::Violation;
    } else {
      const auto windows = mesh_ladder(traj, v.span(), params.ladder_rungs);
      run.report = decrease_check(v, a3, traj, windows, rep.decrease_tol_used);
      run.status = params.tol.judge(run.report.worst_deficit, 1.0);
      decrease_worst = std::max(decrease_worst, run.report.worst_deficit);

      if (!lipschitz_done) {
        // One run suffices: the bound is a property of the model surface,
        // not of the particular segment.
        const double lip_tol = params.tol.band(1.0 + phi.sup_norm());
        rep.lipschitz = check_trajectory_lipschitz(traj, rhs, lip_tol);
        lipschitz_done = true;
        if (!rep.lipschitz.checked) {
          rep.lipschitz_status = CheckStatus::Inconclusive;
        } else {
          rep.lipschitz_status =
              params.tol.judge(rep.lipschitz.worst_excess, 1.0 + rep.lipschitz.c_at_level);
        }
      }
    }
    rep.decrease_status = combine(rep.decrease_status, run.status);
    rep.decrease.push_back(std::move(run));
  }
  rep.decrease_worst =
      std::isfinite(decrease_worst) ? decrease_worst : 0.0;

  // Proof constants at the reference radii, when requested and derivable.
  if (params.eps_ref && params.eta_ref) {
    const double r_eff = std::max(rhs.max_delay(), v.span());
    if (r_eff > 0.0 && rhs.has_c_bound()) {
      ConstantsBlock cb;
      cb.available = true;
      cb.r_used = r_eff;
      cb.c_at_delta = rhs.c_bound(params.delta);
      cb.values.eps = *params.eps_ref;
      cb.values.eta = *params.eta_ref;
      cb.values.delta = params.delta;
      cb.values.delta_of_eps = delta_of_epsilon(a1, a2, *params.eps_ref);
      const auto sb = settling_bound(a1, a2, a3, cb.c_at_delta, r_eff, *params.eta_ref, params.delta);
      cb.values.eps_of_eta = sb.eps_eta;
      cb.values.kappa = sb.kappa;
      cb.values.beta = sb.beta;
      rep.constants = std::move(cb);
    }
  }

  rep.status = combine(combine(rep.bound_status, rep.sandwich_status),
                       combine(rep.decrease_status, rep.lipschitz_status));
  return rep;
}

const char* certificate_verdict(const CertificateReport& rep) {
  switch (rep.status) {
    case CheckStatus::Pass:
      return "certified-GUAS-evidence";
    case CheckStatus::Violation:
      return "refuted";
    default:
      return "inconclusive";
  }
}

StabilityProbeReport uniform_stability_probe(const CaratheodoryRHS& rhs,
                                             const QuadraticFunctional& v,
                                             const std::vector<double>& eps_list,
                                             const CertifyParams& params) {
  if (eps_list.empty()) throw std::invalid_argument("eps_list must be nonempty");
  auto [a1, a2] = sandwich_bounds(v);

  StabilityProbeReport rep;
  const double span = segment_span(rhs, v.span());
  std::uint64_t draw = 0;
  for (double eps : eps_list) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    ProbeLevel level;
    level.eps = eps;
    level.delta = delta_of_epsilon(a1, a2, eps);
    level.margin = a1.eval(eps) - a2.eval(level.delta);
    if (!(level.margin > 0.0)) rep.status = CheckStatus::Violation;
    rep.levels.push_back(level);

    for (double t0 : params.t0_grid) {
      for (int i = 0; i < params.n_phi; ++i) {
        Rng rng(mix_seed(params.seed, kProbeStream, draw++));
        const auto phi = random_segment(v.dim(), span, level.delta, params.knots, rng);
        const auto traj = integrate(rhs, phi, t0, t0 + params.horizon, params.h);
        StabilityProbeRow row;
        row.eps = eps;
        row.t0 = t0;
        row.phi_index = static_cast<std::size_t>(i);
        row.phi_sup = phi.sup_norm();
        row.blew_up = traj.blew_up();
        const auto norms = traj.norm2_series();
        row.peak_norm = *std::max_element(norms.begin(), norms.end());
        row.ratio = row.peak_norm / eps;
        row.status = traj.blew_up() ? CheckStatus::Violation
                                    : params.tol.judge(row.peak_norm - eps, eps);
        rep.worst_ratio = std::max(rep.worst_ratio, row.ratio);
        rep.status = combine(rep.status, row.status);
        rep.rows.push_back(row);
      }
    }
  }
  return rep;
}

SettlingReport settling_consistency(const CaratheodoryRHS& rhs, const QuadraticFunctional& v,
                                    const KInfFn& a3, double eta, const CertifyParams& params) {
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
  if (!rhs.has_c_bound()) {
    throw std::invalid_argument("settling bound needs the model's growth bound");
  }
  const double r_eff = std::max(rhs.max_delay(), v.span());
  if (!(r_eff > 0.0)) {
    throw std::invalid_argument("settling bound needs a positive memory span");
  }
  auto [a1, a2] = sandwich_bounds(v);

  SettlingReport rep;
  rep.eta = eta;
  rep.delta = params.delta;
  rep.bound = settling_bound(a1, a2, a3, rhs.c_bound(params.delta), r_eff, eta, params.delta);

  const double cap = 1e4 * r_eff;
  rep.capped = rep.bound.beta > cap;
  rep.horizon_used = std::min(rep.bound.beta, cap);
  if (!(rep.horizon_used > 0.0)) rep.horizon_used = r_eff;

  const double span = segment_span(rhs, v.span());
  double worst = 0.0;
  for (int i = 0; i < params.n_phi; ++i) {
    Rng rng(mix_seed(params.seed, kSettleStream, static_cast<std::uint64_t>(i)));
    const auto phi = random_segment(v.dim(), span, params.delta, params.knots, rng);
    const auto traj = integrate(rhs, phi, 0.0, rep.horizon_used, params.h);
    SettlingRow row;
    row.phi_index = static_cast<std::size_t>(i);
    row.phi_sup = phi.sup_norm();
    if (traj.blew_up()) {
      row.status = CheckStatus::Violation;
    } else {
      double st = 0.0;
      row.settled = settle_time_of(traj, eta, &st);
      if (row.settled) {
        // The history window lags the pointwise norm by r: the whole segment
        // sits inside the eta-ball r after the last excursion ends.
        row.settle_time = st - traj.t0() + r_eff;
        row.status = params.tol.judge(row.settle_time - rep.bound.beta, rep.bound.beta);
        worst = std::max(worst, row.settle_time);
      } else if (rep.capped) {
        row.status = CheckStatus::Inconclusive;
      } else {
        // The run used the full beta horizon and still sits outside the
        // eta-ball; a hair outside is discretization, more is a violation.
        const auto norms = traj.norm2_series();
        row.status = params.tol.judge(norms.back() - eta, eta);
        worst = std::max(worst, rep.horizon_used);
      }
    }
    rep.status = combine(rep.status, row.status);
    rep.rows.push_back(row);
  }
  rep.worst_settle = worst;
  rep.conservativeness = worst > 0.0 ? rep.bound.beta / worst
                                     : std::numeric_limits<double>::infinity();
  return rep;
}

ClassifyReport classify_behavior(const CaratheodoryRHS& rhs, const CertifyParams& params) {
  const double delta_grid[] = {0.25 * params.delta, 0.5 * params.delta, params.delta};
  const double eps_grid[] = {0.5 * params.delta, params.delta, 2.0 * params.delta};
  const int n_phi = std::min(params.n_phi, 4);

  ClassifyReport rep;
  const double span = segment_span(rhs, 0.0);
  bool any_growth = false;
  std::uint64_t draw = 0;
  for (double delta : delta_grid) {
    for (int i = 0; i < n_phi; ++i) {
      // One segment per (delta, i), reused at every start time: uniformity
      // must compare the same data across t0, not fresh draws.
      Rng rng(mix_seed(params.seed, kClassifyStream, draw++));
      const auto phi = random_segment(rhs.dim(), span, delta, params.knots, rng);
      for (double t0 : params.t0_grid) {
        const auto traj = integrate(rhs, phi, t0, t0 + params.horizon, params.h);
        ClassifyProbe p;
        p.delta = delta;
        p.t0 = t0;
        p.phi_index = static_cast<std::size_t>(i);
        p.start_sup = phi.sup_norm();
        p.blew_up = traj.blew_up();
        const auto norms = traj.norm2_series();
        p.peak_norm = *std::max_element(norms.begin(), norms.end());
        const std::size_t tail = std::max<std::size_t>(1, norms.size() / 10);
        p.end_sup = *std::max_element(norms.end() - static_cast<std::ptrdiff_t>(tail), norms.end());
        rep.any_blowup = rep.any_blowup || p.blew_up;
        if (p.start_sup > 0.0 && p.peak_norm > 1e3 * p.start_sup) any_growth = true;
        if (p.start_sup > 0.0 && p.end_sup > 0.1 * p.start_sup) rep.decaying = false;
        rep.probes.push_back(p);
      }
    }
  }

  // delta_star per (eps, t0): the largest sampled radius whose runs all
  // stayed strictly below eps. Uniformity = the same answer at every t0.
  for (double eps : eps_grid) {
    double ref = -1.0;
    for (double t0 : params.t0_grid) {
      ClassifyCell cell;
      cell.eps = eps;
      cell.t0 = t0;
      for (const auto& p : rep.probes) {
        if (p.t0 != t0 || p.delta <= cell.delta_star) continue;
        bool all_below = true;
        for (const auto& q : rep.probes) {
          if (q.t0 == t0 && q.delta == p.delta && (q.blew_up || q.peak_norm >= eps)) {
            all_below = false;
            break;
          }
        }
        if (all_below) cell.delta_star = p.delta;
      }
      if (ref < 0.0) {
        ref = cell.delta_star;
      } else if (cell.delta_star != ref) {
        rep.uniform = false;
      }
      rep.cells.push_back(cell);
    }
  }

  const bool all_contained = std::all_of(rep.cells.begin(), rep.cells.end(),
                                         [](const ClassifyCell& c) { return c.delta_star > 0.0; });
  if (rep.any_blowup || any_growth) {
    rep.verdict = "unstable";
  } else if (all_contained && rep.uniform && rep.decaying) {
    rep.verdict = "GUAS-evidence";
  } else if (all_contained && rep.uniform) {
    rep.verdict = "uniform-stable-evidence";
  } else if (all_contained) {
    rep.verdict = "stable-evidence";
  } else {
    rep.verdict = "inconclusive";
  }
  return rep;
}

}  // namespace fdecert
