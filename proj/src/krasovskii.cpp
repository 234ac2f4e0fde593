#include "fdecert/krasovskii.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fdecert {

namespace {

void require_symmetric(const Mat& m, const char* label) {
  if (m.rows() != m.cols() || !m.symmetric()) {
    throw std::invalid_argument(std::string(label) + " matrix must be square and exactly symmetric");
  }
}

// x' M x for a row of the segment's flat storage.
double quad_form(const Mat& m, const double* x) {
  const int n = m.rows();
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += m(i, j) * x[j];
    acc += x[i] * row;
  }
  return acc;
}

double quad_form(const Mat& m, const Vec& x) { return quad_form(m, x.data()); }

}  // namespace

QuadraticFunctional::QuadraticFunctional(Mat p, std::optional<Mat> q, std::optional<Mat> r_weight,
                                         double span)
    : p_(std::move(p)), q_(std::move(q)), r_weight_(std::move(r_weight)), span_(span) {
  require_symmetric(p_, "P");
  if (q_) {
    require_symmetric(*q_, "Q");
    if (q_->rows() != p_.rows()) throw std::invalid_argument("Q dimension mismatch");
  }
  if (r_weight_) {
    require_symmetric(*r_weight_, "R");
    if (r_weight_->rows() != p_.rows()) throw std::invalid_argument("R dimension mismatch");
  }
  if ((q_ || r_weight_) && !(span_ > 0.0)) {
    throw std::invalid_argument("memory terms need a positive span");
  }
  if (!(span_ >= 0.0)) throw std::invalid_argument("span must be nonnegative");

  const auto pe = symmetric_eigenvalues(p_);
  lambda_min_p_ = pe.front();
  lambda_max_p_ = pe.back();
  if (!(lambda_min_p_ > 0.0)) {
    throw std::domain_error("P must be positive definite (min eigenvalue " +
                            std::to_string(lambda_min_p_) + ")");
  }
  lambda_max_q_ = 0.0;
  if (q_) {
    const auto qe = symmetric_eigenvalues(*q_);
    if (qe.front() < -1e-12 * std::max(1.0, std::abs(qe.back()))) {
      throw std::domain_error("Q must be positive semidefinite");
    }
    lambda_max_q_ = std::max(0.0, qe.back());
  }
  lambda_max_r_ = 0.0;
  if (r_weight_) {
    const auto re = symmetric_eigenvalues(*r_weight_);
    if (re.front() < -1e-12 * std::max(1.0, std::abs(re.back()))) {
      throw std::domain_error("R must be positive semidefinite");
    }
    lambda_max_r_ = std::max(0.0, re.back());
  }
}

double eval_functional(const QuadraticFunctional& v, const HistorySegment& phi) {
  if (phi.dim() != v.dim()) throw std::invalid_argument("functional/segment dimension mismatch");
  const double r = v.span();
  if (phi.span() + 1e-12 < r) {
    throw std::invalid_argument("segment shorter than the functional's memory span");
  }

  double acc = quad_form(v.p(), phi.value_at_zero());
  if (!v.q() && !v.r_weight()) return acc;

  // Integration mesh: the segment nodes inside [-r, 0], with an interpolated
  // node at -r when the segment reaches further back.
  const auto& theta = phi.mesh_theta();
  std::vector<double> mesh;
  mesh.reserve(theta.size() + 1);
  Vec head(static_cast<std::size_t>(phi.dim()));
  bool head_interp = false;
  if (theta.front() < -r - 1e-15) {
    mesh.push_back(-r);
    phi.eval_into(-r, head.data());
    head_interp = true;
  }
  for (double th : theta) {
    if (th >= -r - 1e-15) mesh.push_back(th);
  }

  // g(s) = phi(s)' Q phi(s) + (s + r) phi(s)' R phi(s), trapezoid over mesh.
  // Without the interpolated head, mesh and theta coincide, so the shared
  // index shift theta.size() - mesh.size() is zero.
  auto g = [&](std::size_t mesh_idx) {
    const double s = mesh[mesh_idx];
    const double* x = nullptr;
    if (head_interp && mesh_idx == 0) {
      x = head.data();
    } else {
      x = phi.node_value(mesh_idx + theta.size() - mesh.size());
    }
    double val = 0.0;
    if (v.q()) val += quad_form(*v.q(), x);
    if (v.r_weight()) val += (s + r) * quad_form(*v.r_weight(), x);
    return val;
  };

  double integral = 0.0;
  double prev = g(0);
  for (std::size_t i = 1; i < mesh.size(); ++i) {
    const double cur = g(i);
    integral += 0.5 * (mesh[i] - mesh[i - 1]) * (prev + cur);
    prev = cur;
  }
  return acc + integral;
}

std::pair<KInfFn, KInfFn> sandwich_bounds(const QuadraticFunctional& v) {
  const double lo = v.lambda_min_p();
  const double r = v.span();
  const double hi = v.lambda_max_p() + r * v.lambda_max_q() + 0.5 * r * r * v.lambda_max_r();
  KInfFn a1 = kinf_quadratic(lo);
  KInfFn a2 = kinf_quadratic(hi);
  return {std::move(a1), std::move(a2)};
}

DecreaseReport decrease_check(const QuadraticFunctional& v, const KInfFn& a3, const Trajectory& traj,
                              const std::vector<std::pair<double, double>>& windows, double tol) {
  if (traj.dim() != v.dim()) throw std::invalid_argument("functional/trajectory dimension mismatch");
  const double r = v.span();
  const double lo_ok = traj.t0() + r;

  // v(t, x_t) and the running integral of a3(|x|_2) on the computed mesh.
  // Both are trapezoid sums on the same nodes, so window values are exact
  // partial-sum differences.
  const auto& times = traj.times();
  const std::size_t first = traj.first_step_index();
  std::vector<double> vvals(times.size(), 0.0);
  std::vector<double> a3_prefix(times.size(), 0.0);
  Vec x(static_cast<std::size_t>(traj.dim()));
  double prev_a3 = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double* row = traj.state(i);
    double nrm = 0.0;
    for (int j = 0; j < traj.dim(); ++j) nrm += row[j] * row[j];
    const double cur_a3 = a3.eval(std::sqrt(nrm));
    if (i > 0) a3_prefix[i] = a3_prefix[i - 1] + 0.5 * (times[i] - times[i - 1]) * (prev_a3 + cur_a3);
    prev_a3 = cur_a3;
    if (i >= first && times[i] >= lo_ok - 1e-9) {
      vvals[i] = eval_functional(v, traj.segment_at(times[i], r > 0.0 ? r : traj.h()));
    }
  }

  auto node_index = [&](double t) -> std::size_t {
    const auto it = std::lower_bound(times.begin(), times.end(), t - 1e-9);
    if (it == times.end() || std::abs(*it - t) > 1e-9) {
      throw std::invalid_argument("window endpoint " + std::to_string(t) +
                                  " is not a mesh node of the trajectory");
    }
    return static_cast<std::size_t>(it - times.begin());
  };

  DecreaseReport report;
  report.windows.reserve(windows.size());
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& [ws, wt] : windows) {
    if (!(wt > ws)) throw std::invalid_argument("decrease window must have positive length");
    if (ws + 1e-9 < lo_ok) {
      throw std::invalid_argument("window start precedes the first full history at t0 + span");
    }
    const std::size_t is = node_index(ws);
    const std::size_t it = node_index(wt);
    WindowCheck w;
    w.s = ws;
    w.t = wt;
    w.lhs = vvals[it] - vvals[is];
    w.rhs = -(a3_prefix[it] - a3_prefix[is]);
    w.deficit = w.lhs - w.rhs;
    w.allowed = tol * (1.0 + std::abs(vvals[is]));
    w.pass = w.deficit <= w.allowed;
    if (w.deficit - w.allowed > worst) {
      worst = w.deficit - w.allowed;
      report.worst_index = report.windows.size();
    }
    report.pass = report.pass && w.pass;
    report.windows.push_back(w);
  }
  report.worst_deficit = report.windows.empty() ? 0.0 : worst;
  return report;
}

std::vector<std::pair<double, double>> window_ladder(double lo, double hi, int rungs) {
  if (!(hi > lo) || rungs < 1) throw std::invalid_argument("bad window ladder");
  std::vector<std::pair<double, double>> out;
  out.reserve(2 * static_cast<std::size_t>(rungs));
  const double step = (hi - lo) / rungs;
  for (int i = 0; i < rungs; ++i) {
    out.emplace_back(lo + i * step, i + 1 == rungs ? hi : lo + (i + 1) * step);
  }
  // Cumulative prefixes catch cancellation a chain of short windows can hide.
  for (int i = 1; i < rungs; ++i) {
    out.emplace_back(lo, i + 1 == rungs ? hi : lo + (i + 1) * step);
  }
  return out;
}

}  // namespace fdecert
