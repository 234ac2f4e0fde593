#include "fdecert/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace fdecert {

MatrixKernel constant_kernel(const Mat& m) {
  return MatrixKernel{"constant", [m](double) { return m; }, m.induced_norm1()};
}

MatrixKernel exponential_kernel(const Mat& m, double rate) {
  if (!(rate >= 0.0))
    throw std::invalid_argument("exponential_kernel: rate must be nonnegative (bounded on the history window)");
  return MatrixKernel{"exponential",
                      [m, rate](double tau) { return m.scaled(std::exp(rate * tau)); },
                      m.induced_norm1()};
}

MatrixKernel polynomial_kernel(const Mat& m, const std::vector<double>& coeffs, double span) {
  if (coeffs.empty()) throw std::invalid_argument("polynomial_kernel: need at least one coefficient");
  if (!(span > 0.0)) throw std::invalid_argument("polynomial_kernel: span must be positive");
  auto poly = [coeffs](double tau) {
    double acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * tau + coeffs[k];
    return acc;
  };
  double sup = 0.0;
  for (int i = 0; i <= 1000; ++i) sup = std::max(sup, std::fabs(poly(-span + span * i / 1000.0)));
  return MatrixKernel{"polynomial", [m, poly](double tau) { return m.scaled(poly(tau)); },
                      m.induced_norm1() * sup};
}

CaratheodoryRHS::CaratheodoryRHS(std::string kind, int dim, double max_delay, EvalFn eval,
                                 BoundFn c_bound, std::optional<double> lipschitz_hint)
    : kind_(std::move(kind)), dim_(dim), max_delay_(max_delay), eval_(std::move(eval)),
      c_bound_(std::move(c_bound)), lipschitz_hint_(lipschitz_hint) {
  if (dim_ < 1) throw std::invalid_argument("CaratheodoryRHS: dimension must be positive");
  if (!(max_delay_ >= 0.0)) throw std::invalid_argument("CaratheodoryRHS: max delay must be nonnegative");
  if (!eval_) throw std::invalid_argument("CaratheodoryRHS: eval is empty");
}

void CaratheodoryRHS::eval_into(double t, const HistorySegment& phi, Vec& out) const {
  if (phi.dim() != dim_) throw std::invalid_argument("CaratheodoryRHS: history dimension mismatch");
  if (phi.span() < max_delay_ - 1e-12) throw std::invalid_argument("CaratheodoryRHS: history span too short");
  out.assign(static_cast<std::size_t>(dim_), 0.0);
  eval_(t, phi, out);
}

Vec CaratheodoryRHS::eval(double t, const HistorySegment& phi) const {
  Vec out;
  eval_into(t, phi, out);
  return out;
}

double CaratheodoryRHS::c_bound(double delta) const {
  if (!c_bound_) throw std::logic_error("CaratheodoryRHS: c_bound unavailable for this system");
  if (!(delta > 0.0)) throw std::invalid_argument("CaratheodoryRHS: c_bound needs delta > 0");
  return c_bound_(delta);
}

CaratheodoryRHS CaratheodoryRHS::with_c_bound(BoundFn c_bound) const {
  CaratheodoryRHS out = *this;
  out.c_bound_ = std::move(c_bound);
  return out;
}

namespace {

// Shared evaluation core for the pointwise-delay forms. Both the direct form
// and the measure form funnel through this exact sequence, which is what
// makes their results bit-identical.
void pointwise_delay_core(const Mat& a1, const Mat& a2, double atom, const HistorySegment& phi,
                          Vec& out) {
  const int n = static_cast<int>(out.size());
  Vec x0(static_cast<std::size_t>(n)), xr(static_cast<std::size_t>(n));
  phi.eval_into(0.0, x0.data());
  phi.eval_into(atom, xr.data());
  a1.apply_add(x0, out);
  a2.apply_add(xr, out);
}

void check_square(const Mat& m, int n, const char* what) {
  if (m.rows() != n || m.cols() != n) throw std::invalid_argument(std::string(what) + ": matrix must be n x n");
}

}  // namespace

CaratheodoryRHS linear_delay_rhs(const Mat& a1, const Mat& a2, const DelaySignal& delay) {
  const int n = a1.rows();
  check_square(a1, n, "linear_delay_rhs a1");
  check_square(a2, n, "linear_delay_rhs a2");
  const double coef = (a1.induced_norm1() + a2.induced_norm1()) * std::sqrt(static_cast<double>(n));
  auto d = delay;
  return CaratheodoryRHS(
      "linear_delay", n, delay.r2(),
      [a1, a2, d](double t, const HistorySegment& phi, Vec& out) {
        pointwise_delay_core(a1, a2, -d.eval(t), phi, out);
      },
      [coef](double delta) { return coef * delta; }, coef);
}

CaratheodoryRHS stieltjes_rhs(const Mat& a1, const Mat& a2, const DelaySignal& delay, double span) {
  const int n = a1.rows();
  check_square(a1, n, "stieltjes_rhs a1");
  check_square(a2, n, "stieltjes_rhs a2");
  if (!(span >= delay.r2())) throw std::invalid_argument("stieltjes_rhs: span must dominate the delay bound");
  const double coef = (a1.induced_norm1() + a2.induced_norm1()) * std::sqrt(static_cast<double>(n));
  auto d = delay;
  return CaratheodoryRHS(
      "stieltjes", n, span,
      [a1, a2, d, span](double t, const HistorySegment& phi, Vec& out) {
        // The integrator of the step measure tau -> step(tau + r(t)) jumps
        // exactly once on [-span, 0]; the whole kernel integral collapses to
        // the history evaluated at that atom.
        const double atom = -d.eval(t);
        if (atom < -span - 1e-12) throw std::domain_error("stieltjes_rhs: delay exceeds the declared span");
        pointwise_delay_core(a1, a2, atom, phi, out);
      },
      [coef](double delta) { return coef * delta; }, coef);
}

namespace {

// One family of terms: head * phi(0) + integral of a kernel against the
// history + direct and convolved input terms + a direct disturbance term.
// Both the state equation and the output map are instances.
struct TermFamily {
  int out_dim = 0;
  int state_dim = 0;
  Mat head;
  std::optional<MatrixKernel> hist_kernel;
  std::optional<Mat> in_direct;
  std::optional<MatrixKernel> in_kernel;
  std::optional<Mat> dist_direct;
  DelaySignal delay;
  std::shared_ptr<const InputSignal> u;
  std::shared_ptr<const DisturbanceSignal> w;
};

void eval_family(const TermFamily& fam, double t, const HistorySegment& phi, Vec& out) {
  Vec x0(static_cast<std::size_t>(fam.state_dim));
  phi.eval_into(0.0, x0.data());
  fam.head.apply_add(x0, out);

  const double r = fam.delay.eval(t);
  if (fam.hist_kernel || fam.in_kernel) {
    const double lo = -r;
    const auto& theta = phi.mesh_theta();
    auto it = std::upper_bound(theta.begin(), theta.end(), lo);
    // node list: lo, interior mesh nodes, 0 (the mesh always ends at 0)
    Vec xn(static_cast<std::size_t>(fam.state_dim));
    Vec g_prev(out.size()), g_curr(out.size());
    Vec un;
    auto integrand = [&](double tau, const Vec& x, Vec& g) {
      std::fill(g.begin(), g.end(), 0.0);
      if (fam.hist_kernel) fam.hist_kernel->eval(tau).apply_add(x, g);
      if (fam.in_kernel) {
        un = fam.u->eval(t + tau);
        fam.in_kernel->eval(tau).apply_add(un, g);
      }
    };
    double tau_prev = lo;
    phi.eval_into(lo, xn.data());
    integrand(lo, xn, g_prev);
    for (; it != theta.end(); ++it) {
      const double tau = *it;
      phi.eval_into(tau, xn.data());
      integrand(tau, xn, g_curr);
      const double half_dt = 0.5 * (tau - tau_prev);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += half_dt * (g_prev[i] + g_curr[i]);
      g_prev.swap(g_curr);
      tau_prev = tau;
    }
  }

  if (fam.in_direct) {
    const Vec ut = fam.u->eval(t);
    fam.in_direct->apply_add(ut, out);
  }
  if (fam.dist_direct) {
    const Vec wt = fam.w->eval(t);
    fam.dist_direct->apply_add(wt, out);
  }
}

}  // namespace

CaratheodoryRHS distributed_delay_rhs(const DistributedCoeffs& coeffs, const DelaySignal& delay,
                                      std::shared_ptr<const InputSignal> u,
                                      std::shared_ptr<const DisturbanceSignal> w) {
  const int n = coeffs.a1.rows();
  check_square(coeffs.a1, n, "distributed_delay_rhs a1");
  if ((coeffs.b1 || coeffs.b2_kernel) && !u)
    throw std::invalid_argument("distributed_delay_rhs: input terms declared without an input signal");
  if (coeffs.d1 && !w)
    throw std::invalid_argument("distributed_delay_rhs: disturbance term declared without a signal");

  TermFamily fam;
  fam.out_dim = n;
  fam.state_dim = n;
  fam.head = coeffs.a1;
  fam.hist_kernel = coeffs.a2_kernel;
  fam.in_direct = coeffs.b1;
  fam.in_kernel = coeffs.b2_kernel;
  fam.dist_direct = coeffs.d1;
  fam.delay = delay;
  fam.u = u;
  fam.w = w;

  const double r2 = delay.r2();
  const double root_n = std::sqrt(static_cast<double>(n));
  double state_coef = coeffs.a1.induced_norm1();
  if (coeffs.a2_kernel) state_coef += r2 * coeffs.a2_kernel->sup_norm1;
  double offset = 0.0;
  if (coeffs.b1) offset += coeffs.b1->induced_norm1() * u->sup_norm1();
  if (coeffs.b2_kernel) offset += r2 * coeffs.b2_kernel->sup_norm1 * u->sup_norm1();
  if (coeffs.d1) offset += coeffs.d1->induced_norm1() * w->sup_norm1();

  return CaratheodoryRHS(
      "distributed", n, r2,
      [fam](double t, const HistorySegment& phi, Vec& out) { eval_family(fam, t, phi, out); },
      [state_coef, root_n, offset](double delta) { return state_coef * root_n * delta + offset; },
      state_coef * root_n);
}

OutputMap::OutputMap(int dim_z, std::function<void(double, const HistorySegment&, Vec&)> eval)
    : dim_z_(dim_z), eval_(std::move(eval)) {
  if (dim_z_ < 1) throw std::invalid_argument("OutputMap: output dimension must be positive");
}

Vec OutputMap::eval(double t, const HistorySegment& phi) const {
  Vec out(static_cast<std::size_t>(dim_z_), 0.0);
  eval_(t, phi, out);
  return out;
}

OutputMap output_map(const OutputCoeffs& coeffs, const DelaySignal& delay,
                     std::shared_ptr<const InputSignal> u,
                     std::shared_ptr<const DisturbanceSignal> w) {
  const int nz = coeffs.c1.rows();
  if ((coeffs.b4 || coeffs.b5_kernel) && !u)
    throw std::invalid_argument("output_map: input terms declared without an input signal");
  if (coeffs.d2 && !w) throw std::invalid_argument("output_map: disturbance term declared without a signal");

  TermFamily fam;
  fam.out_dim = nz;
  fam.state_dim = coeffs.c1.cols();
  fam.head = coeffs.c1;
  fam.hist_kernel = coeffs.c2_kernel;
  fam.in_direct = coeffs.b4;
  fam.in_kernel = coeffs.b5_kernel;
  fam.dist_direct = coeffs.d2;
  fam.delay = delay;
  fam.u = u;
  fam.w = w;

  return OutputMap(nz, [fam](double t, const HistorySegment& phi, Vec& out) { eval_family(fam, t, phi, out); });
}

namespace {

constexpr std::uint64_t kBoundStream = 0xb01d;
constexpr std::uint64_t kLipStream = 0x11b5;
constexpr int kSampleKnots = 16;
constexpr double kSampleTimeRange = 50.0;

double sampling_span(const CaratheodoryRHS& rhs) {
  return rhs.max_delay() > 0.0 ? rhs.max_delay() : 1.0;
}

std::pair<double, HistorySegment> draw_bound_sample(const CaratheodoryRHS& rhs, double delta,
                                                    std::uint64_t seed, std::int64_t index) {
  Rng rng(mix_seed(seed, kBoundStream, static_cast<std::uint64_t>(index)));
  const double t = rng.uniform(-kSampleTimeRange, kSampleTimeRange);
  HistorySegment phi = random_segment(rhs.dim(), sampling_span(rhs), delta, kSampleKnots, rng);
  return {t, std::move(phi)};
}

}  // namespace

BoundCheckResult verify_caratheodory_bound(const CaratheodoryRHS& rhs, double delta,
                                           std::int64_t n_samples, std::uint64_t seed) {
  BoundCheckResult res;
  res.delta = delta;
  res.n_samples = n_samples;
  res.seed = seed;
  if (!rhs.has_c_bound()) {
    res.bound_available = false;
    return res;
  }
  const double c = rhs.c_bound(delta);
  Vec f;
  for (std::int64_t i = 0; i < n_samples; ++i) {
    auto [t, phi] = draw_bound_sample(rhs, delta, seed, i);
    rhs.eval_into(t, phi, f);
    const double fn = norm1(f);
    const double ratio = c > 0.0 ? fn / c : (fn > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    if (ratio > res.max_ratio) res.max_ratio = ratio;
    if (fn >= c && !res.counterexample) {
      res.pass = false;
      res.counterexample = BoundViolation{t, i, ratio};
    }
  }
  return res;
}

std::pair<double, HistorySegment> replay_bound_sample(const CaratheodoryRHS& rhs, double delta,
                                                      std::uint64_t seed, std::int64_t sample_index) {
  return draw_bound_sample(rhs, delta, seed, sample_index);
}

double lipschitz_probe(const CaratheodoryRHS& rhs, double delta, std::int64_t n_pairs,
                       std::uint64_t seed) {
  double best = 0.0;
  Vec f1, f2;
  for (std::int64_t i = 0; i < n_pairs; ++i) {
    Rng rng(mix_seed(seed, kLipStream, static_cast<std::uint64_t>(i)));
    const double t = rng.uniform(-kSampleTimeRange, kSampleTimeRange);
    const double span = sampling_span(rhs);
    HistorySegment a = random_segment(rhs.dim(), span, delta, kSampleKnots, rng);
    HistorySegment b = random_segment(rhs.dim(), span, delta, kSampleKnots, rng);
    double dsup = 0.0;
    for (std::size_t k = 0; k < a.knots(); ++k) {
      double s = 0.0;
      for (int c = 0; c < a.dim(); ++c) {
        const double d = a.node_value(k)[c] - b.node_value(k)[c];
        s += d * d;
      }
      dsup = std::max(dsup, std::sqrt(s));
    }
    if (dsup < 1e-12) continue;
    rhs.eval_into(t, a, f1);
    rhs.eval_into(t, b, f2);
    double dn = 0.0;
    for (std::size_t c = 0; c < f1.size(); ++c) dn += std::fabs(f1[c] - f2[c]);
    best = std::max(best, dn / dsup);
  }
  return best;
}

}  // namespace fdecert
