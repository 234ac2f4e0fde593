#include "fdecert/signals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fdecert/rng.hpp"

namespace fdecert {

DelaySignal::DelaySignal(std::string kind, double r1, double r2, std::function<double(double)> eval)
    : kind_(std::move(kind)), r1_(r1), r2_(r2), eval_(std::move(eval)) {
  if (!(r1_ >= 0.0) || !(r2_ >= r1_)) throw std::invalid_argument("DelaySignal: need 0 <= r1 <= r2");
  if (!eval_) throw std::invalid_argument("DelaySignal: eval is empty");
}

const DelaySignal& DelaySignal::representative() const {
  if (!representative_) throw std::logic_error("DelaySignal: no representative attached");
  return *representative_;
}

void DelaySignal::attach_representative(std::shared_ptr<const DelaySignal> rep, double glitch_measure) {
  if (!rep) throw std::invalid_argument("DelaySignal: representative is null");
  if (!(glitch_measure >= 0.0)) throw std::invalid_argument("DelaySignal: glitch measure must be nonnegative");
  representative_ = std::move(rep);
  glitch_measure_ = glitch_measure;
}

DelaySignal constant_delay(double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("constant_delay: r must be nonnegative");
  return DelaySignal("constant", r, r, [r](double) { return r; });
}

DelaySignal piecewise_constant_delay(const std::vector<double>& breakpoints,
                                     const std::vector<double>& values, double r1, double r2) {
  if (values.size() != breakpoints.size() + 1)
    throw std::invalid_argument("piecewise_constant_delay: need exactly one more value than breakpoints");
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    if (!(breakpoints[i] > breakpoints[i - 1]))
      throw std::invalid_argument("piecewise_constant_delay: breakpoints must be strictly ascending");
  for (double v : values)
    if (!(v >= r1) || !(v <= r2))
      throw std::invalid_argument("piecewise_constant_delay: value outside [r1, r2]");
  auto bp = breakpoints;
  auto vals = values;
  return DelaySignal("piecewise_constant", r1, r2, [bp, vals](double t) {
    const auto it = std::upper_bound(bp.begin(), bp.end(), t);
    return vals[static_cast<std::size_t>(it - bp.begin())];
  });
}

DelaySignal glitched_delay(const DelaySignal& base, const std::vector<GlitchInterval>& glitches,
                           double glitch_value) {
  if (!(glitch_value >= base.r1()) || !(glitch_value <= base.r2()))
    throw std::invalid_argument("glitched_delay: glitch value outside [r1, r2]");
  auto sorted = glitches;
  std::sort(sorted.begin(), sorted.end(),
            [](const GlitchInterval& a, const GlitchInterval& b) { return a.start < b.start; });
  double measure = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!(sorted[i].width > 0.0)) throw std::invalid_argument("glitched_delay: interval width must be positive");
    if (i > 0 && sorted[i].start < sorted[i - 1].start + sorted[i - 1].width)
      throw std::invalid_argument("glitched_delay: glitch intervals overlap");
    measure += sorted[i].width;
  }
  std::vector<double> starts(sorted.size()), ends(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    starts[i] = sorted[i].start;
    ends[i] = sorted[i].start + sorted[i].width;
  }
  auto rep = std::make_shared<DelaySignal>(base);
  DelaySignal out("glitched", base.r1(), base.r2(), [rep, starts, ends, glitch_value](double t) {
    const auto it = std::upper_bound(starts.begin(), starts.end(), t);
    if (it != starts.begin()) {
      const std::size_t i = static_cast<std::size_t>(it - starts.begin()) - 1;
      if (t < ends[i]) return glitch_value;
    }
    return rep->eval(t);
  });
  out.attach_representative(rep, measure);
  return out;
}

std::vector<GlitchInterval> random_glitch_intervals(double total_measure, int count,
                                                    double window_start, double window_end,
                                                    std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("random_glitch_intervals: count must be positive");
  if (!(total_measure > 0.0)) throw std::invalid_argument("random_glitch_intervals: measure must be positive");
  const double width = total_measure / static_cast<double>(count);
  const double room = (window_end - window_start) - total_measure;
  if (!(room > 0.0)) throw std::invalid_argument("random_glitch_intervals: window too small for requested measure");
  Rng rng(seed);
  std::vector<double> starts;
  for (int attempt = 0; attempt < 1000 && static_cast<int>(starts.size()) < count; ++attempt) {
    const double s = rng.uniform(window_start, window_end - width);
    bool ok = true;
    for (double other : starts)
      if (s < other + width && other < s + width) { ok = false; break; }
    if (ok) starts.push_back(s);
  }
  if (static_cast<int>(starts.size()) < count)
    throw std::runtime_error("random_glitch_intervals: could not place non-overlapping intervals");
  std::sort(starts.begin(), starts.end());
  std::vector<GlitchInterval> out;
  out.reserve(starts.size());
  for (double s : starts) out.push_back({s, width});
  return out;
}

DisturbanceSignal::DisturbanceSignal(std::string kind, int dim, std::function<Vec(double)> eval,
                                     std::function<double(double, double)> l2_norm_on, double sup_norm1)
    : kind_(std::move(kind)), dim_(dim), eval_(std::move(eval)), l2_(std::move(l2_norm_on)), sup_norm1_(sup_norm1) {
  if (dim_ < 1) throw std::invalid_argument("DisturbanceSignal: dimension must be positive");
}

DisturbanceSignal zero_disturbance(int dim) {
  return DisturbanceSignal("none", dim, [dim](double) { return Vec(static_cast<std::size_t>(dim), 0.0); },
                           [](double, double) { return 0.0; }, 0.0);
}

namespace {

// integral of sin^2(omega u) over [0, u]
double sin_sq_antiderivative(double omega, double u) {
  return 0.5 * u - std::sin(2.0 * omega * u) / (4.0 * omega);
}

double sinusoid_energy(double amplitude, double omega, double lo, double hi) {
  if (hi <= lo) return 0.0;
  return amplitude * amplitude * (sin_sq_antiderivative(omega, hi) - sin_sq_antiderivative(omega, lo));
}

}  // namespace

DisturbanceSignal truncated_sinusoid(double amplitude, double omega, double t_start, double t_end) {
  if (!(omega > 0.0)) throw std::invalid_argument("truncated_sinusoid: omega must be positive");
  if (!std::isfinite(t_end) || !(t_end > t_start))
    throw std::invalid_argument("truncated_sinusoid: support must be a bounded interval");
  auto energy = [amplitude, omega, t_start, t_end](double a, double b) {
    const double lo = std::max(a, t_start) - t_start;
    const double hi = std::min(b, t_end) - t_start;
    return std::sqrt(std::max(0.0, sinusoid_energy(amplitude, omega, lo, hi)));
  };
  return DisturbanceSignal(
      "truncated_sinusoid", 1,
      [amplitude, omega, t_start, t_end](double t) {
        Vec w(1, 0.0);
        if (t >= t_start && t <= t_end) w[0] = amplitude * std::sin(omega * (t - t_start));
        return w;
      },
      energy, std::fabs(amplitude));
}

DisturbanceSignal decaying_exponential(double amplitude, double rate, double t_start) {
  if (!(rate > 0.0)) throw std::invalid_argument("decaying_exponential: rate must be positive for finite energy");
  auto energy = [amplitude, rate, t_start](double a, double b) {
    const double lo = std::max(a, t_start);
    if (b <= lo) return 0.0;
    const double e_lo = std::exp(-2.0 * rate * (lo - t_start));
    const double e_hi = std::isfinite(b) ? std::exp(-2.0 * rate * (b - t_start)) : 0.0;
    return std::sqrt(amplitude * amplitude / (2.0 * rate) * (e_lo - e_hi));
  };
  return DisturbanceSignal(
      "decaying_exponential", 1,
      [amplitude, rate, t_start](double t) {
        Vec w(1, 0.0);
        if (t >= t_start) w[0] = amplitude * std::exp(-rate * (t - t_start));
        return w;
      },
      energy, std::fabs(amplitude));
}

DisturbanceSignal burst_train(double amplitude, double omega, double t_start, double width,
                              double gap, int count) {
  if (!(omega > 0.0)) throw std::invalid_argument("burst_train: omega must be positive");
  if (!(width > 0.0) || !(gap >= 0.0) || count < 1)
    throw std::invalid_argument("burst_train: need positive width, nonnegative gap, count >= 1");
  auto energy = [amplitude, omega, t_start, width, gap, count](double a, double b) {
    double total = 0.0;
    for (int k = 0; k < count; ++k) {
      const double s = t_start + static_cast<double>(k) * (width + gap);
      const double lo = std::max(a, s) - s;
      const double hi = std::min(b, s + width) - s;
      total += sinusoid_energy(amplitude, omega, std::max(0.0, lo), hi);
    }
    return std::sqrt(std::max(0.0, total));
  };
  return DisturbanceSignal(
      "burst_train", 1,
      [amplitude, omega, t_start, width, gap, count](double t) {
        Vec w(1, 0.0);
        if (t >= t_start) {
          const double period = width + gap;
          const double k = std::floor((t - t_start) / period);
          if (k < static_cast<double>(count)) {
            const double local = t - t_start - k * period;
            if (local <= width) w[0] = amplitude * std::sin(omega * local);
          }
        }
        return w;
      },
      energy, std::fabs(amplitude));
}

InputSignal::InputSignal(std::string kind, int dim, std::function<Vec(double)> eval, double sup_norm1)
    : kind_(std::move(kind)), dim_(dim), eval_(std::move(eval)), sup_norm1_(sup_norm1) {
  if (dim_ < 1) throw std::invalid_argument("InputSignal: dimension must be positive");
}

InputSignal zero_input(int dim) {
  return InputSignal("none", dim, [dim](double) { return Vec(static_cast<std::size_t>(dim), 0.0); }, 0.0);
}

InputSignal constant_input(const Vec& value) {
  return InputSignal("constant", static_cast<int>(value.size()), [value](double) { return value; }, norm1(value));
}

InputSignal sinusoid_input(double amplitude, double omega, int dim) {
  if (!(omega > 0.0)) throw std::invalid_argument("sinusoid_input: omega must be positive");
  return InputSignal(
      "sinusoid", dim,
      [amplitude, omega, dim](double t) {
        return Vec(static_cast<std::size_t>(dim), amplitude * std::sin(omega * t));
      },
      std::fabs(amplitude) * dim);
}

}  // namespace fdecert
