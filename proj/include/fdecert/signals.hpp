#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fdecert/linalg.hpp"

namespace fdecert {

/**
 * Measurable time-varying delay: r(t) in [r1, r2] for all t. A signal may
 * carry a representative it agrees with outside a glitch set of known total
 * measure; integrations against the two then differ by an amount controlled
 * by that measure, which is what the deviation study quantifies.
 */
class DelaySignal {
public:
  DelaySignal() = default;
  DelaySignal(std::string kind, double r1, double r2, std::function<double(double)> eval);

  double r1() const { return r1_; }
  double r2() const { return r2_; }
  const std::string& kind() const { return kind_; }
  double eval(double t) const { return eval_(t); }
  double operator()(double t) const { return eval_(t); }

  bool has_representative() const { return representative_ != nullptr; }
  const DelaySignal& representative() const;
  /// Total measure of the set where this signal disagrees with its
  /// representative; zero when no representative is attached.
  double glitch_measure() const { return glitch_measure_; }

  void attach_representative(std::shared_ptr<const DelaySignal> rep, double glitch_measure);

private:
  std::string kind_;
  double r1_ = 0.0;
  double r2_ = 0.0;
  std::function<double(double)> eval_;
  std::shared_ptr<const DelaySignal> representative_;
  double glitch_measure_ = 0.0;
};

DelaySignal constant_delay(double r);

/// Right-continuous step delay: value index i applies on [b_{i-1}, b_i), so
/// eval(b_i) already returns values[i+1]. values must have one more entry
/// than breakpoints and every value must lie in [r1, r2].
DelaySignal piecewise_constant_delay(const std::vector<double>& breakpoints,
                                     const std::vector<double>& values, double r1, double r2);

struct GlitchInterval {
  double start = 0.0;
  double width = 0.0;
};

/// Base delay overridden on finitely many half-open intervals [start,
/// start+width). Overlapping intervals are rejected. The result carries the
/// base as its representative and the summed width as the glitch measure.
DelaySignal glitched_delay(const DelaySignal& base, const std::vector<GlitchInterval>& glitches,
                           double glitch_value);

/// Seeded non-overlapping glitch layout: `count` intervals of equal width
/// total_measure/count, placed in [window_start, window_end).
std::vector<GlitchInterval> random_glitch_intervals(double total_measure, int count,
                                                    double window_start, double window_end,
                                                    std::uint64_t seed);

/**
 * Finite-energy disturbance. eval maps time to a vector; l2_norm_on returns
 * the L2 norm over a time interval (upper end may be +infinity) and agrees
 * with direct quadrature of |eval|^2 to within 1%. sup_norm1 is the declared
 * essential bound of |w(t)|_1, used by derivative-bound bookkeeping.
 */
class DisturbanceSignal {
public:
  DisturbanceSignal() = default;
  DisturbanceSignal(std::string kind, int dim, std::function<Vec(double)> eval,
                    std::function<double(double, double)> l2_norm_on, double sup_norm1);

  const std::string& kind() const { return kind_; }
  int dim() const { return dim_; }
  Vec eval(double t) const { return eval_(t); }
  double l2_norm_on(double a, double b) const { return l2_(a, b); }
  double sup_norm1() const { return sup_norm1_; }

private:
  std::string kind_;
  int dim_ = 0;
  std::function<Vec(double)> eval_;
  std::function<double(double, double)> l2_;
  double sup_norm1_ = 0.0;
};

DisturbanceSignal zero_disturbance(int dim);

/// amplitude * sin(omega (t - t_start)) on [t_start, t_end], zero outside.
DisturbanceSignal truncated_sinusoid(double amplitude, double omega, double t_start, double t_end);

/// amplitude * exp(-rate (t - t_start)) for t >= t_start, zero before;
/// rejects rate <= 0 (the tail would not be square integrable).
DisturbanceSignal decaying_exponential(double amplitude, double rate, double t_start);

/// count sinusoidal bursts of the given width, spaced gap apart, starting at
/// t_start; zero between bursts and outside the train.
DisturbanceSignal burst_train(double amplitude, double omega, double t_start, double width,
                              double gap, int count);

/// Declared open-loop input channel (zero or a fixed analytic signal).
class InputSignal {
public:
  InputSignal() = default;
  InputSignal(std::string kind, int dim, std::function<Vec(double)> eval, double sup_norm1);

  const std::string& kind() const { return kind_; }
  int dim() const { return dim_; }
  Vec eval(double t) const { return eval_(t); }
  double sup_norm1() const { return sup_norm1_; }

private:
  std::string kind_;
  int dim_ = 0;
  std::function<Vec(double)> eval_;
  double sup_norm1_ = 0.0;
};

InputSignal zero_input(int dim);
InputSignal constant_input(const Vec& value);
InputSignal sinusoid_input(double amplitude, double omega, int dim);

}  // namespace fdecert
