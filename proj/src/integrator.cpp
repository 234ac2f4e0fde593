#include "fdecert/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace fdecert {

namespace {

constexpr double kBlowupNorm = 1e9;

void interp_row(const std::vector<double>& times, const std::vector<double>& flat, int dim, double t,
                double* out) {
  if (t <= times.front()) {
    const double* v = flat.data();
    std::copy(v, v + dim, out);
    return;
  }
  if (t >= times.back()) {
    const double* v = flat.data() + (times.size() - 1) * static_cast<std::size_t>(dim);
    std::copy(v, v + dim, out);
    return;
  }
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - times.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - times[lo]) / (times[hi] - times[lo]);
  const double* vlo = flat.data() + lo * static_cast<std::size_t>(dim);
  const double* vhi = flat.data() + hi * static_cast<std::size_t>(dim);
  for (int i = 0; i < dim; ++i) out[i] = vlo[i] + w * (vhi[i] - vlo[i]);
}

/// Owns the growing mesh during one integration and builds stage history
/// segments into reused buffers.
class Stepper {
public:
  Stepper(const CaratheodoryRHS& rhs, const HistorySegment& phi, double t0)
      : rhs_(rhs), dim_(rhs.dim()) {
    span_seg_ = rhs.max_delay() > 0.0 ? rhs.max_delay() : phi.span();
    const std::size_t k = phi.knots();
    times_.reserve(k + 64);
    flat_.reserve((k + 64) * static_cast<std::size_t>(dim_));
    for (std::size_t i = 0; i < k; ++i) {
      times_.push_back(t0 + phi.mesh_theta()[i]);
      const double* v = phi.node_value(i);
      flat_.insert(flat_.end(), v, v + dim_);
    }
    times_.back() = t0;  // theta grid ends at exactly zero
  }

  double span_seg() const { return span_seg_; }
  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& flat() const { return flat_; }

  const double* last_state() const { return flat_.data() + (times_.size() - 1) * static_cast<std::size_t>(dim_); }

  void push_node(double t, const Vec& x) {
    times_.push_back(t);
    flat_.insert(flat_.end(), x.begin(), x.end());
  }

  /// k_out := f(t_s, window ending at t_s). stage_value, when given, becomes
  /// the endpoint of the window (the chord from the last accepted node to the
  /// stage state covers lookups inside the current step). Without it the
  /// window ends at the last accepted node.
  void stage_eval(double t_s, const Vec* stage_value, Vec& k_out) {
    const double ws = t_s - span_seg_;
    wtimes_.clear();
    wflat_.clear();
    wtimes_.push_back(ws);
    wflat_.resize(static_cast<std::size_t>(dim_));
    interp_row(times_, flat_, dim_, ws, wflat_.data());
    const auto it = std::upper_bound(times_.begin(), times_.end(), ws);
    for (std::size_t j = static_cast<std::size_t>(it - times_.begin()); j < times_.size(); ++j) {
      wtimes_.push_back(times_[j]);
      const double* v = flat_.data() + j * static_cast<std::size_t>(dim_);
      wflat_.insert(wflat_.end(), v, v + dim_);
    }
    if (stage_value != nullptr) {
      wtimes_.push_back(t_s);
      wflat_.insert(wflat_.end(), stage_value->begin(), stage_value->end());
    }
    seg_.reset_from_window(span_seg_, dim_, wtimes_, wflat_, t_s);
    rhs_.eval_into(t_s, seg_, k_out);
  }

private:
  const CaratheodoryRHS& rhs_;
  int dim_;
  double span_seg_ = 0.0;
  std::vector<double> times_;
  std::vector<double> flat_;
  std::vector<double> wtimes_, wflat_;
  HistorySegment seg_;
};

}  // namespace

Trajectory integrate(const CaratheodoryRHS& rhs, const HistorySegment& phi, double t0, double horizon,
                     double h) {
  if (phi.dim() != rhs.dim()) throw std::invalid_argument("integrate: history dimension mismatch");
  if (phi.span() < rhs.max_delay() - 1e-12)
    throw std::invalid_argument("integrate: history span is shorter than the delay bound");
  if (!(h > 0.0)) throw std::invalid_argument("integrate: step must be positive");
  if (!(horizon > t0)) throw std::invalid_argument("integrate: horizon must exceed t0");
  if (rhs.max_delay() > 0.0 && h > rhs.max_delay() / 4.0 + 1e-12)
    throw std::invalid_argument("integrate: step too large for the delay window (need h <= r/4)");

  Stepper st(rhs, phi, t0);
  const int n = rhs.dim();

  Trajectory traj;
  traj.t0_ = t0;
  traj.horizon_ = horizon;
  traj.h_ = h;
  traj.dim_ = n;
  traj.max_delay_ = rhs.max_delay();
  traj.first_step_index_ = phi.knots() - 1;

  const double total = horizon - t0;
  const std::int64_t n_full = static_cast<std::int64_t>(std::floor(total / h + 1e-9));
  const double rem = total - static_cast<double>(n_full) * h;
  const bool has_partial = rem > 1e-9 * h;

  Vec x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n)), xn(static_cast<std::size_t>(n));
  Vec k1, k2, k3, k4;

  const std::int64_t n_steps = n_full + (has_partial ? 1 : 0);
  for (std::int64_t k = 0; k < n_steps; ++k) {
    const double tk = t0 + static_cast<double>(k) * h;
    const bool partial = (k == n_full);
    const double hs = partial ? rem : h;
    // the mesh ends exactly at the horizon, whether or not h divides it
    const double tn = (k + 1 == n_steps) ? horizon : t0 + static_cast<double>(k + 1) * h;

    const double* xk = st.last_state();
    std::copy(xk, xk + n, x.begin());

    st.stage_eval(tk, nullptr, k1);
    for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] + 0.5 * hs * k1[static_cast<std::size_t>(i)];
    st.stage_eval(tk + 0.5 * hs, &y, k2);
    for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] + 0.5 * hs * k2[static_cast<std::size_t>(i)];
    st.stage_eval(tk + 0.5 * hs, &y, k3);
    for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] + hs * k3[static_cast<std::size_t>(i)];
    st.stage_eval(tn, &y, k4);

    for (int i = 0; i < n; ++i) {
      const std::size_t s = static_cast<std::size_t>(i);
      xn[s] = x[s] + hs / 6.0 * (k1[s] + 2.0 * k2[s] + 2.0 * k3[s] + k4[s]);
    }

    st.push_node(tn, xn);

    double nsq = 0.0;
    bool finite = true;
    for (double v : xn) {
      if (!std::isfinite(v)) { finite = false; break; }
      nsq += v * v;
    }
    if (!finite || std::sqrt(nsq) > kBlowupNorm) {
      traj.blew_up_ = true;
      traj.blowup_time_ = tn;
      break;
    }
  }

  traj.times_ = st.times();
  traj.flat_ = st.flat();
  return traj;
}

void Trajectory::state_at_into(double t, double* out) const {
  interp_row(times_, flat_, dim_, t, out);
}

Vec Trajectory::state_at(double t) const {
  Vec out(static_cast<std::size_t>(dim_));
  state_at_into(t, out.data());
  return out;
}

HistorySegment Trajectory::segment_at(double t, double span) const {
  if (!(span > 0.0)) throw std::invalid_argument("segment_at: span must be positive");
  if (t < t0_ - 1e-12 || t > end_time() + 1e-12)
    throw std::invalid_argument("segment_at: time outside the computed range");
  const double ws = t - span;
  if (ws < times_.front() - 1e-9) throw std::invalid_argument("segment_at: window leaves the mesh");

  std::vector<double> wt;
  std::vector<double> wf;
  wt.push_back(ws);
  wf.resize(static_cast<std::size_t>(dim_));
  interp_row(times_, flat_, dim_, ws, wf.data());
  for (auto it = std::upper_bound(times_.begin(), times_.end(), ws);
       it != times_.end() && *it < t; ++it) {
    const std::size_t j = static_cast<std::size_t>(it - times_.begin());
    wt.push_back(times_[j]);
    const double* v = flat_.data() + j * static_cast<std::size_t>(dim_);
    wf.insert(wf.end(), v, v + dim_);
  }
  wt.push_back(t);
  const std::size_t at = wf.size();
  wf.resize(wf.size() + static_cast<std::size_t>(dim_));
  interp_row(times_, flat_, dim_, t, wf.data() + at);

  HistorySegment seg;
  seg.reset_from_window(span, dim_, wt, wf, t);
  return seg;
}

std::vector<double> Trajectory::norm2_series() const {
  std::vector<double> out(times_.size());
  for (std::size_t i = 0; i < times_.size(); ++i) {
    double s = 0.0;
    const double* v = state(i);
    for (int c = 0; c < dim_; ++c) s += v[c] * v[c];
    out[i] = std::sqrt(s);
  }
  return out;
}

std::vector<double> Trajectory::window_sup_series(double span) const {
  const std::vector<double> norms = norm2_series();
  std::vector<double> out;
  out.reserve(times_.size() - first_step_index_);
  std::deque<std::size_t> dq;  // indices with decreasing norms
  for (std::size_t i = 0; i < times_.size(); ++i) {
    while (!dq.empty() && norms[dq.back()] <= norms[i]) dq.pop_back();
    dq.push_back(i);
    while (times_[dq.front()] < times_[i] - span - 1e-12) dq.pop_front();
    if (i >= first_step_index_) out.push_back(norms[dq.front()]);
  }
  return out;
}

DeviationReport ae_equivalence_deviation(const CaratheodoryRHS& rhs_a, const CaratheodoryRHS& rhs_b,
                                         const HistorySegment& phi, double t0, double horizon,
                                         double h, double rho) {
  if (!(rho >= 0.0)) throw std::invalid_argument("ae_equivalence_deviation: rho must be nonnegative");
  const Trajectory a = integrate(rhs_a, phi, t0, horizon, h);
  const Trajectory b = integrate(rhs_b, phi, t0, horizon, h);
  DeviationReport rep;
  rep.rho = rho;
  rep.blowup_a = a.blew_up();
  rep.blowup_b = b.blew_up();
  const std::size_t n = std::min(a.times().size(), b.times().size());
  double dev = 0.0;
  for (std::size_t i = a.first_step_index(); i < n; ++i) {
    double s = 0.0;
    for (int c = 0; c < a.dim(); ++c) {
      const double d = a.state(i)[c] - b.state(i)[c];
      s += d * d;
    }
    dev = std::max(dev, std::sqrt(s));
  }
  rep.max_deviation = dev;
  rep.compared_until = a.times()[n - 1];
  rep.k_constant = dev / (rho + h);
  return rep;
}

std::vector<ConvergenceEntry> convergence_study(const CaratheodoryRHS& rhs, const HistorySegment& phi,
                                                double t0, double horizon,
                                                const std::vector<double>& h_list) {
  if (h_list.size() < 3) throw std::invalid_argument("convergence_study: need at least three step sizes");
  for (std::size_t i = 1; i < h_list.size(); ++i)
    if (!(h_list[i] < h_list[i - 1]))
      throw std::invalid_argument("convergence_study: steps must be strictly decreasing");

  std::vector<Trajectory> runs;
  runs.reserve(h_list.size());
  for (double h : h_list) runs.push_back(integrate(rhs, phi, t0, horizon, h));
  const Trajectory& ref = runs.back();

  // Error of run i against the reference, sampled at the coarsest grid nodes.
  const Trajectory& coarse = runs.front();
  auto error_of = [&](const Trajectory& traj) {
    double err = 0.0;
    Vec a(static_cast<std::size_t>(traj.dim())), b(static_cast<std::size_t>(traj.dim()));
    for (std::size_t j = coarse.first_step_index(); j < coarse.times().size(); ++j) {
      const double t = coarse.times()[j];
      if (t > ref.end_time() || t > traj.end_time()) break;
      traj.state_at_into(t, a.data());
      ref.state_at_into(t, b.data());
      double s = 0.0;
      for (int c = 0; c < traj.dim(); ++c) s += (a[static_cast<std::size_t>(c)] - b[static_cast<std::size_t>(c)]) * (a[static_cast<std::size_t>(c)] - b[static_cast<std::size_t>(c)]);
      err = std::max(err, std::sqrt(s));
    }
    return err;
  };

  std::vector<double> errs;
  for (std::size_t i = 0; i + 1 < runs.size(); ++i) errs.push_back(error_of(runs[i]));

  std::vector<ConvergenceEntry> out;
  for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
    ConvergenceEntry e;
    e.h_coarse = h_list[i];
    e.h_fine = h_list[i + 1];
    e.err_coarse = errs[i];
    e.err_fine = errs[i + 1];
    if (errs[i + 1] > 0.0 && errs[i] > errs[i + 1]) {
      e.order = std::log(errs[i] / errs[i + 1]) / std::log(h_list[i] / h_list[i + 1]);
    }
    out.push_back(e);
  }
  return out;
}

LipschitzCheckResult check_trajectory_lipschitz(const Trajectory& traj, const CaratheodoryRHS& rhs,
                                                double tol) {
  LipschitzCheckResult res;
  if (!rhs.has_c_bound()) return res;
  res.checked = true;

  const std::vector<double> norms = traj.norm2_series();
  double sup = 0.0;
  for (double v : norms) sup = std::max(sup, v);
  res.level = sup * (1.0 + 1e-9) + 1e-12;
  res.c_at_level = rhs.c_bound(res.level);

  const double window = traj.max_delay() > 0.0 ? traj.max_delay() : std::min(1.0, traj.end_time() - traj.t0());
  const auto& times = traj.times();
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = traj.first_step_index(); i < times.size(); ++i) {
    for (std::size_t j = i + 1; j < times.size(); ++j) {
      const double dt = times[j] - times[i];
      if (dt > window + 1e-12) break;
      double d1 = 0.0;
      for (int c = 0; c < traj.dim(); ++c) d1 += std::fabs(traj.state(j)[c] - traj.state(i)[c]);
      const double excess = d1 - res.c_at_level * dt - tol;
      if (excess > worst) {
        worst = excess;
        res.worst_s = times[i];
        res.worst_t = times[j];
      }
    }
  }
  res.worst_excess = worst;
  res.pass = !(worst > 0.0);
  return res;
}

void write_trajectory_table(const Trajectory& traj, std::ostream& os) {
  os << "time";
  for (int c = 0; c < traj.dim(); ++c) os << ",x" << c;
  os << "\n";
  char buf[64];
  for (std::size_t i = 0; i < traj.times().size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", traj.times()[i]);
    os << buf;
    for (int c = 0; c < traj.dim(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", traj.state(i)[c]);
      os << ',' << buf;
    }
    os << "\n";
  }
}

}  // namespace fdecert
