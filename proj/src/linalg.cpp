#include "fdecert/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fdecert {

double norm1(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += std::fabs(x);
  return s;
}

double norm2(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double norm_inf(const Vec& v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::fabs(x));
  return s;
}

void axpy(double a, const Vec& x, Vec& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

Mat::Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0.0) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("matrix dimensions must be nonnegative");
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::zero(int rows, int cols) { return Mat(rows, cols); }

Mat Mat::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw std::invalid_argument("matrix literal has no rows");
  const std::size_t cols = rows.front().size();
  if (cols == 0) throw std::invalid_argument("matrix literal has an empty row");
  Mat m(static_cast<int>(rows.size()), static_cast<int>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("matrix literal is ragged");
    for (std::size_t j = 0; j < cols; ++j) m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  }
  return m;
}

Vec Mat::apply(const Vec& x) const {
  Vec out(static_cast<std::size_t>(rows_), 0.0);
  apply_add(x, out);
  return out;
}

void Mat::apply_add(const Vec& x, Vec& acc) const {
  if (x.size() != static_cast<std::size_t>(cols_)) throw std::invalid_argument("matrix/vector size mismatch");
  if (acc.size() != static_cast<std::size_t>(rows_)) throw std::invalid_argument("matrix/accumulator size mismatch");
  for (int i = 0; i < rows_; ++i) {
    double s = acc[static_cast<std::size_t>(i)];
    const double* row = a_.data() + static_cast<std::size_t>(i) * cols_;
    for (int j = 0; j < cols_; ++j) s += row[j] * x[static_cast<std::size_t>(j)];
    acc[static_cast<std::size_t>(i)] = s;
  }
}

Mat Mat::scaled(double a) const {
  Mat m = *this;
  for (double& x : m.a_) x *= a;
  return m;
}

bool Mat::symmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

double Mat::induced_norm1() const {
  double best = 0.0;
  for (int j = 0; j < cols_; ++j) {
    double s = 0.0;
    for (int i = 0; i < rows_; ++i) s += std::fabs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

namespace {

double off_diagonal_norm(const Mat& m) {
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (i != j) s += m(i, j) * m(i, j);
  return std::sqrt(s);
}

double frobenius(const Mat& m) {
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) s += m(i, j) * m(i, j);
  return std::sqrt(s);
}

}  // namespace

std::vector<double> symmetric_eigenvalues(const Mat& input) {
  const int n = input.rows();
  if (n < 1 || n > 8) throw std::invalid_argument("symmetric_eigenvalues: dimension must be in [1, 8]");
  if (!input.symmetric()) throw std::invalid_argument("symmetric_eigenvalues: matrix is not symmetric");

  if (n == 1) return {input(0, 0)};
  if (n == 2) {
    const double a = input(0, 0), b = input(0, 1), c = input(1, 1);
    const double mid = 0.5 * (a + c);
    const double rad = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
    return {mid - rad, mid + rad};
  }

  Mat m = input;
  const double tol = 1e-12 * std::max(1.0, frobenius(m));
  for (int sweep = 0; sweep < 64 && off_diagonal_norm(m) > tol; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = m(p, q);
        if (std::fabs(apq) <= tol / (n * n)) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double mkp = m(k, p), mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (int k = 0; k < n; ++k) {
          const double mpk = m(p, k), mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
      }
    }
  }

  std::vector<double> ev(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = m(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace fdecert
