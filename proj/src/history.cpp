#include "fdecert/history.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fdecert {

HistorySegment::HistorySegment(double span, std::vector<double> theta, std::vector<double> flat_values, int dim)
    : span_(span), dim_(dim), theta_(std::move(theta)), values_(std::move(flat_values)) {
  check();
}

void HistorySegment::check() const {
  if (!(span_ > 0.0)) throw std::invalid_argument("HistorySegment: span must be positive");
  if (dim_ < 1) throw std::invalid_argument("HistorySegment: dimension must be positive");
  if (theta_.size() < 2) throw std::invalid_argument("HistorySegment: need at least 2 mesh nodes");
  if (values_.size() != theta_.size() * static_cast<std::size_t>(dim_))
    throw std::invalid_argument("HistorySegment: value storage does not match mesh");
  if (theta_.front() != -span_ || theta_.back() != 0.0)
    throw std::invalid_argument("HistorySegment: mesh must run from -span to 0");
  for (std::size_t i = 1; i < theta_.size(); ++i)
    if (!(theta_[i] > theta_[i - 1])) throw std::invalid_argument("HistorySegment: mesh must be strictly ascending");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("HistorySegment: non-finite value");
}

HistorySegment HistorySegment::constant(double span, const Vec& value, int knots) {
  if (knots < 2) throw std::invalid_argument("HistorySegment::constant: need at least 2 knots");
  const int dim = static_cast<int>(value.size());
  std::vector<double> theta(static_cast<std::size_t>(knots));
  std::vector<double> flat(static_cast<std::size_t>(knots) * value.size());
  for (int k = 0; k < knots; ++k) {
    theta[static_cast<std::size_t>(k)] =
        (k == knots - 1) ? 0.0 : -span + span * static_cast<double>(k) / static_cast<double>(knots - 1);
    std::copy(value.begin(), value.end(), flat.begin() + static_cast<std::size_t>(k) * value.size());
  }
  theta.front() = -span;
  return HistorySegment(span, std::move(theta), std::move(flat), dim);
}

HistorySegment HistorySegment::from_function(double span, int dim, const std::function<Vec(double)>& f, int knots) {
  if (knots < 2) throw std::invalid_argument("HistorySegment::from_function: need at least 2 knots");
  std::vector<double> theta(static_cast<std::size_t>(knots));
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(knots) * static_cast<std::size_t>(dim));
  for (int k = 0; k < knots; ++k) {
    double th = -span + span * static_cast<double>(k) / static_cast<double>(knots - 1);
    if (k == 0) th = -span;
    if (k == knots - 1) th = 0.0;
    theta[static_cast<std::size_t>(k)] = th;
    Vec v = f(th);
    if (static_cast<int>(v.size()) != dim) throw std::invalid_argument("HistorySegment::from_function: bad dimension");
    flat.insert(flat.end(), v.begin(), v.end());
  }
  return HistorySegment(span, std::move(theta), std::move(flat), dim);
}

void HistorySegment::eval_into(double theta, double* out) const {
  if (theta <= theta_.front()) {
    const double* v = node_value(0);
    std::copy(v, v + dim_, out);
    return;
  }
  if (theta >= 0.0) {
    const double* v = node_value(theta_.size() - 1);
    std::copy(v, v + dim_, out);
    return;
  }
  const auto it = std::upper_bound(theta_.begin(), theta_.end(), theta);
  const std::size_t hi = static_cast<std::size_t>(it - theta_.begin());
  const std::size_t lo = hi - 1;
  const double w = (theta - theta_[lo]) / (theta_[hi] - theta_[lo]);
  const double* vlo = node_value(lo);
  const double* vhi = node_value(hi);
  for (int i = 0; i < dim_; ++i) out[i] = vlo[i] + w * (vhi[i] - vlo[i]);
}

Vec HistorySegment::eval(double theta) const {
  Vec out(static_cast<std::size_t>(dim_));
  eval_into(theta, out.data());
  return out;
}

Vec HistorySegment::value_at_zero() const {
  const double* v = node_value(theta_.size() - 1);
  return Vec(v, v + dim_);
}

double HistorySegment::sup_norm() const {
  double best = 0.0;
  for (std::size_t k = 0; k < theta_.size(); ++k) {
    const double* v = node_value(k);
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += v[i] * v[i];
    best = std::max(best, s);
  }
  return std::sqrt(best);
}

double HistorySegment::local_slope_bound() const {
  double best = 0.0;
  for (std::size_t k = 1; k < theta_.size(); ++k) {
    const double* a = node_value(k - 1);
    const double* b = node_value(k);
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += (b[i] - a[i]) * (b[i] - a[i]);
    best = std::max(best, std::sqrt(s) / (theta_[k] - theta_[k - 1]));
  }
  return best;
}

void HistorySegment::reset_from_window(double span, int dim, const std::vector<double>& absolute_times,
                                       const std::vector<double>& flat_states, double t_end) {
  span_ = span;
  dim_ = dim;
  const std::size_t n = absolute_times.size();
  theta_.resize(n);
  for (std::size_t i = 0; i < n; ++i) theta_[i] = absolute_times[i] - t_end;
  if (!theta_.empty()) {
    theta_.front() = -span;
    theta_.back() = 0.0;
  }
  values_ = flat_states;
  // Pinning the endpoints can drive a neighbor onto them when a window time
  // sits within rounding distance of t_end - span. Collapse such collisions;
  // the later node's value stands.
  const std::size_t d = static_cast<std::size_t>(dim_);
  std::size_t w = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (theta_[i] > theta_[w]) {
      ++w;
      theta_[w] = theta_[i];
    }
    if (w != i) {
      std::copy(values_.begin() + static_cast<std::ptrdiff_t>(i * d),
                values_.begin() + static_cast<std::ptrdiff_t>((i + 1) * d),
                values_.begin() + static_cast<std::ptrdiff_t>(w * d));
    }
  }
  theta_.resize(w + 1);
  values_.resize((w + 1) * d);
  check();
}

HistorySegment random_segment(int dim, double span, double delta, int knots, Rng& rng) {
  if (!(delta > 0.0)) throw std::invalid_argument("random_segment: delta must be positive");
  if (knots < 2) throw std::invalid_argument("random_segment: need at least 2 knots");
  std::vector<double> theta(static_cast<std::size_t>(knots));
  std::vector<double> flat(static_cast<std::size_t>(knots) * static_cast<std::size_t>(dim));
  for (int k = 0; k < knots; ++k) {
    double th = -span + span * static_cast<double>(k) / static_cast<double>(knots - 1);
    if (k == 0) th = -span;
    if (k == knots - 1) th = 0.0;
    theta[static_cast<std::size_t>(k)] = th;
    double* v = flat.data() + static_cast<std::size_t>(k) * static_cast<std::size_t>(dim);
    double nsq = 0.0;
    for (int i = 0; i < dim; ++i) {
      v[i] = rng.uniform(-delta, delta);
      nsq += v[i] * v[i];
    }
    const double n = std::sqrt(nsq);
    if (n >= delta && n > 0.0) {
      for (int i = 0; i < dim; ++i) v[i] *= delta / n;
    }
  }
  const double shrink = 1.0 - 1e-9;  // keeps the sup norm strictly inside the ball
  for (double& v : flat) v *= shrink;
  return HistorySegment(span, std::move(theta), std::move(flat), dim);
}

}  // namespace fdecert
