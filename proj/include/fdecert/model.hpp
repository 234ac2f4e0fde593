#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "fdecert/history.hpp"
#include "fdecert/linalg.hpp"
#include "fdecert/signals.hpp"

namespace fdecert {

/// Matrix-valued kernel on the delay window, with a declared sup of the
/// induced 1-norm used for derivative-bound bookkeeping.
struct MatrixKernel {
  std::string kind;
  std::function<Mat(double)> eval;
  double sup_norm1 = 0.0;
};

MatrixKernel constant_kernel(const Mat& m);
/// m * exp(rate * tau); tau <= 0 on the window, so rate > 0 decays backward.
MatrixKernel exponential_kernel(const Mat& m, double rate);
/// m * (c0 + c1 tau + c2 tau^2 + ...), sup taken over [-span, 0].
MatrixKernel polynomial_kernel(const Mat& m, const std::vector<double>& coeffs, double span);

/**
 * Right-hand side f(t, x_t) of a functional differential equation understood
 * in the almost-everywhere sense: measurable in t, continuous in the history
 * argument. c_bound, when available, declares a closed-form c with
 * |f(t, phi)|_1 < c(delta) whenever sup_theta |phi(theta)|_2 < delta; it is a
 * declared contract, falsifiable by verify_caratheodory_bound.
 */
class CaratheodoryRHS {
public:
  using EvalFn = std::function<void(double, const HistorySegment&, Vec&)>;
  using BoundFn = std::function<double(double)>;

  CaratheodoryRHS() = default;
  CaratheodoryRHS(std::string kind, int dim, double max_delay, EvalFn eval, BoundFn c_bound,
                  std::optional<double> lipschitz_hint = {});

  const std::string& kind() const { return kind_; }
  int dim() const { return dim_; }
  double max_delay() const { return max_delay_; }

  Vec eval(double t, const HistorySegment& phi) const;
  void eval_into(double t, const HistorySegment& phi, Vec& out) const;

  bool has_c_bound() const { return static_cast<bool>(c_bound_); }
  double c_bound(double delta) const;
  std::optional<double> lipschitz_hint() const { return lipschitz_hint_; }

  /// Same dynamics with the declared bound replaced (used to exercise the
  /// falsification path with a deliberately understated bound).
  CaratheodoryRHS with_c_bound(BoundFn c_bound) const;

private:
  std::string kind_;
  int dim_ = 0;
  double max_delay_ = 0.0;
  EvalFn eval_;
  BoundFn c_bound_;
  std::optional<double> lipschitz_hint_;
};

/// f(t, phi) = a1 phi(0) + a2 phi(-r(t)).
CaratheodoryRHS linear_delay_rhs(const Mat& a1, const Mat& a2, const DelaySignal& delay);

/**
 * The same dynamics written against the unit-step delay measure: the kernel
 * integral of phi against d step(tau + r(t)) over [-span, 0] collapses by
 * sifting to a single atom at tau = -r(t). The evaluation locates that atom
 * and reads the history there, reproducing linear_delay_rhs bit for bit.
 * span must dominate the delay bound r2.
 */
CaratheodoryRHS stieltjes_rhs(const Mat& a1, const Mat& a2, const DelaySignal& delay, double span);

struct DistributedCoeffs {
  Mat a1;
  std::optional<MatrixKernel> a2_kernel;
  std::optional<Mat> b1;
  std::optional<MatrixKernel> b2_kernel;
  std::optional<Mat> d1;
};

struct OutputCoeffs {
  Mat c1;
  std::optional<MatrixKernel> c2_kernel;
  std::optional<Mat> b4;
  std::optional<MatrixKernel> b5_kernel;
  std::optional<Mat> d2;
};

/**
 * f(t, phi) = a1 phi(0) + int_{-r(t)}^0 A2(tau) phi(tau) dtau
 *           + b1 u(t) + int_{-r(t)}^0 B2(tau) u(t+tau) dtau + d1 w(t).
 * Kernel integrals use the composite trapezoid rule over the history mesh
 * restricted to [-r(t), 0], with an interpolated node at the moving end.
 * The declared c_bound combines kernel sups times r2 with the declared
 * essential bounds of u and w; it is unavailable when either bound is.
 */
CaratheodoryRHS distributed_delay_rhs(const DistributedCoeffs& coeffs, const DelaySignal& delay,
                                      std::shared_ptr<const InputSignal> u,
                                      std::shared_ptr<const DisturbanceSignal> w);

/// Output z(t, phi) with the same kernel quadrature as the state equation.
class OutputMap {
public:
  OutputMap() = default;
  OutputMap(int dim_z, std::function<void(double, const HistorySegment&, Vec&)> eval);

  int dim_z() const { return dim_z_; }
  Vec eval(double t, const HistorySegment& phi) const;

private:
  int dim_z_ = 0;
  std::function<void(double, const HistorySegment&, Vec&)> eval_;
};

OutputMap output_map(const OutputCoeffs& coeffs, const DelaySignal& delay,
                     std::shared_ptr<const InputSignal> u,
                     std::shared_ptr<const DisturbanceSignal> w);

/// State equation, output map, and the signals they close over.
struct DistributedSystem {
  CaratheodoryRHS rhs;
  OutputMap output;
  std::shared_ptr<const InputSignal> u;
  std::shared_ptr<const DisturbanceSignal> w;
};

struct BoundViolation {
  double t = 0.0;
  std::int64_t sample_index = -1;
  double ratio = 0.0;  // |f|_1 / c(delta), >= 1 at a violation
};

struct BoundCheckResult {
  bool pass = true;
  bool bound_available = true;
  double max_ratio = 0.0;
  double delta = 0.0;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
  std::optional<BoundViolation> counterexample;
};

/// Samples (t, phi) pairs with sup |phi|_2 < delta (piecewise linear, 16
/// knots) and checks |f(t, phi)|_1 < c(delta) strictly. Violations are
/// replayable from (seed, sample_index).
BoundCheckResult verify_caratheodory_bound(const CaratheodoryRHS& rhs, double delta,
                                           std::int64_t n_samples, std::uint64_t seed);

/// Regenerate the sampled pair behind a reported violation.
std::pair<double, HistorySegment> replay_bound_sample(const CaratheodoryRHS& rhs, double delta,
                                                      std::uint64_t seed, std::int64_t sample_index);

/// Largest observed |f(t,phi1) - f(t,phi2)|_1 / sup|phi1 - phi2|_2 over
/// sampled pairs in the delta-ball; a sampled lower estimate of the Lipschitz
/// modulus, not a certified constant.
double lipschitz_probe(const CaratheodoryRHS& rhs, double delta, std::int64_t n_pairs,
                       std::uint64_t seed);

}  // namespace fdecert
