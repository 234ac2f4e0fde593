#include "fdecert/dissipativity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fdecert {

namespace {

// Storage values and the supply-rate trapezoid prefix on the computed mesh.
// Storage is only defined once a full memory window exists; nodes before
// t0 + span hold zero and must not be referenced by window endpoints.
struct MeshSeries {
  std::vector<double> v_at;
  std::vector<double> supply_prefix;
  double storage_lo = 0.0;  // first time with a full history window
};

MeshSeries build_series(const DistributedSystem& sys, const QuadraticFunctional& v,
                        const SupplyRate& supply, const Trajectory& traj) {
  if (traj.dim() != v.dim()) throw std::invalid_argument("functional/trajectory dimension mismatch");
  const auto& times = traj.times();
  const double r = v.span();
  const double seg_span = r > 0.0 ? r : traj.h();

  MeshSeries out;
  out.storage_lo = traj.t0() + r;
  out.v_at.assign(times.size(), 0.0);
  out.supply_prefix.assign(times.size(), 0.0);

  const std::size_t first = traj.first_step_index();
  double prev_rate = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    double rate = 0.0;
    if (i >= first) {
      const auto seg = traj.segment_at(t, seg_span);
      if (t >= out.storage_lo - 1e-9) out.v_at[i] = eval_functional(v, seg);
      const Vec w = sys.w->eval(t);
      const Vec z = sys.output.eval(t, seg);
      rate = supply.eval(w, z);
    }
    if (i > 0) {
      out.supply_prefix[i] =
          out.supply_prefix[i - 1] + 0.5 * (times[i] - times[i - 1]) * (prev_rate + rate);
    }
    prev_rate = rate;
  }
  return out;
}

std::size_t node_index(const std::vector<double>& times, double t) {
  const auto it = std::lower_bound(times.begin(), times.end(), t - 1e-9);
  if (it == times.end() || std::abs(*it - t) > 1e-9) {
    throw std::invalid_argument("window endpoint " + std::to_string(t) +
                                " is not a mesh node of the trajectory");
  }
  return static_cast<std::size_t>(it - times.begin());
}

std::size_t first_node_at_or_after(const std::vector<double>& times, double t) {
  const auto it = std::lower_bound(times.begin(), times.end(), t - 1e-9);
  if (it == times.end()) {
    throw std::invalid_argument("run too short: no mesh node past t0 + span");
  }
  return static_cast<std::size_t>(it - times.begin());
}

}  // namespace

SupplyRate l2_gain_supply(double gamma) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("gain must be nonnegative");
  SupplyRate s;
  s.kind = "l2-gain";
  s.gamma = gamma;
  const double g2 = gamma * gamma;
  s.eval = [g2](const Vec& w, const Vec& z) {
    const double nw = norm2(w), nz = norm2(z);
    return g2 * nw * nw - nz * nz;
  };
  return s;
}

SupplyRate passivity_supply() {
  SupplyRate s;
  s.kind = "passivity";
  s.eval = [](const Vec& w, const Vec& z) {
    if (w.size() != z.size()) {
      throw std::invalid_argument("passivity supply needs matching disturbance/output dimensions");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) acc += z[i] * w[i];
    return acc;
  };
  return s;
}

DissipativityReport check_dissipativity(const DistributedSystem& sys, const QuadraticFunctional& v,
                                        const SupplyRate& supply, const Trajectory& traj,
                                        const std::vector<std::pair<double, double>>& windows,
                                        double tol, const TolerancePolicy& pol) {
  const auto series = build_series(sys, v, supply, traj);
  const auto& times = traj.times();

  DissipativityReport rep;
  rep.windows.reserve(windows.size());
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& [ws, wt] : windows) {
    if (!(wt > ws)) throw std::invalid_argument("dissipation window must have positive length");
    if (ws + 1e-9 < series.storage_lo) {
      throw std::invalid_argument("window start precedes the first full history at t0 + span");
    }
    const std::size_t is = node_index(times, ws);
    const std::size_t it = node_index(times, wt);
    DissipationWindow w;
    w.s = ws;
    w.t = wt;
    w.storage_change = series.v_at[it] - series.v_at[is];
    w.supplied = series.supply_prefix[it] - series.supply_prefix[is];
    w.deficit = w.storage_change - w.supplied;
    w.allowed = tol * (1.0 + std::abs(series.v_at[is]));
    w.pass = w.deficit <= w.allowed;
    worst = std::max(worst, w.deficit - w.allowed);
    rep.windows.push_back(w);
  }
  rep.worst_excess = rep.windows.empty() ? 0.0 : worst;
  rep.status = pol.judge(rep.worst_excess, 1.0);
  return rep;
}

DifferentialFormReport differential_form_check(const DistributedSystem& sys,
                                               const QuadraticFunctional& v,
                                               const SupplyRate& supply, const Trajectory& traj,
                                               double tol, const TolerancePolicy& pol) {
  const auto series = build_series(sys, v, supply, traj);
  const auto& times = traj.times();

  DifferentialFormReport rep;
  const std::size_t start = first_node_at_or_after(times, series.storage_lo);
  // Micro windows of two mesh steps, marching one window at a time.
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = start; i + 2 < times.size(); i += 2) {
    const std::size_t j = i + 2;
    const double dt = times[j] - times[i];
    if (!(dt > 0.0)) continue;
    const double dvdt = (series.v_at[j] - series.v_at[i]) / dt;
    const double avg_supply = (series.supply_prefix[j] - series.supply_prefix[i]) / dt;
    const double excess = dvdt - avg_supply - tol;
    rep.n_windows += 1;
    rep.width = dt;
    if (excess > worst) {
      worst = excess;
      rep.worst_at = times[i];
    }
  }
  rep.worst_rate_excess = rep.n_windows > 0 ? worst : 0.0;
  rep.status = pol.judge(rep.worst_rate_excess, 1.0);
  return rep;
}

}  // namespace fdecert
