#pragma once

#include <cstddef>
#include <vector>

namespace fdecert {

using Vec = std::vector<double>;

double norm1(const Vec& v);
double norm2(const Vec& v);
double norm_inf(const Vec& v);

/// y += a * x  (dimensions must already agree)
void axpy(double a, const Vec& x, Vec& y);

/// Small dense matrix, row-major. Sized for state dimensions up to 8.
class Mat {
public:
  Mat() = default;
  Mat(int rows, int cols);
  static Mat identity(int n);
  static Mat zero(int rows, int cols);
  static Mat from_rows(const std::vector<std::vector<double>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  Vec apply(const Vec& x) const;
  /// acc += A x, evaluated in fixed row order so results are reproducible.
  void apply_add(const Vec& x, Vec& acc) const;
  Mat scaled(double a) const;

  /// Exact elementwise symmetry (no tolerance).
  bool symmetric() const;
  /// Induced 1-norm: max absolute column sum.
  double induced_norm1() const;

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

/// Eigenvalues of a symmetric matrix, ascending. Closed form for n <= 2,
/// cyclic Jacobi sweeps (off-diagonal threshold 1e-12, relative to the
/// Frobenius scale) for 3 <= n <= 8. Throws std::invalid_argument outside
/// that range or for non-symmetric input.
std::vector<double> symmetric_eigenvalues(const Mat& m);

}  // namespace fdecert
