#include "doctest.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fdecert/signals.hpp"

using namespace fdecert;

TEST_CASE("constant delay") {
  const auto d = constant_delay(0.3);
  CHECK(d.r1() == 0.3);
  CHECK(d.r2() == 0.3);
  CHECK(d(0.0) == 0.3);
  CHECK(d(1e6) == 0.3);
  CHECK(d.glitch_measure() == 0.0);
}

TEST_CASE("piecewise-constant delay is right-continuous") {
  const auto d = piecewise_constant_delay({0.25, 0.5, 0.75}, {0.1, 0.2, 0.3, 0.4}, 0.1, 0.4);
  CHECK(d(-1.0) == 0.1);
  CHECK(d(0.1) == 0.1);
  CHECK(d(0.25) == 0.2);       // the new piece already applies at its breakpoint
  CHECK(d(0.49999999) == 0.2);
  CHECK(d(0.5) == 0.3);
  CHECK(d(0.999999) == 0.4);
  CHECK(d(100.0) == 0.4);
}

TEST_CASE("piecewise-constant delay validates its data") {
  CHECK_THROWS_AS(piecewise_constant_delay({0.5}, {0.05, 0.2}, 0.1, 0.4), std::invalid_argument);
  CHECK_THROWS_AS(piecewise_constant_delay({0.5}, {0.2}, 0.1, 0.4), std::invalid_argument);
  CHECK_THROWS_AS(piecewise_constant_delay({0.5, 0.25}, {0.2, 0.2, 0.2}, 0.1, 0.4),
                  std::invalid_argument);
}

TEST_CASE("glitched delay overrides the base on its intervals only") {
  const auto base = piecewise_constant_delay({1.0}, {0.2, 0.3}, 0.1, 0.5);
  // Interval ends chosen exactly representable so the boundary checks are
  // meaningful: 0.5 + 0.25 = 0.75 without rounding.
  const auto d = glitched_delay(base, {{0.5, 0.25}, {2.0, 0.02}}, 0.45);
  CHECK(d(0.3) == 0.2);
  CHECK(d(0.5) == 0.45);
  CHECK(d(0.7499) == 0.45);
  CHECK(d(0.75) == 0.2);  // half-open interval
  CHECK(d(2.015) == 0.45);
  CHECK(d(3.0) == 0.3);
  CHECK(d.glitch_measure() == doctest::Approx(0.27).epsilon(1e-14));
  REQUIRE(d.has_representative());
  CHECK(d.representative()(0.6) == 0.2);
}

TEST_CASE("glitched delay rejects bad layouts") {
  const auto base = piecewise_constant_delay({}, {0.2}, 0.1, 0.5);
  CHECK_THROWS_AS(glitched_delay(base, {{0.0, 0.1}, {0.05, 0.1}}, 0.45), std::invalid_argument);
  CHECK_THROWS_AS(glitched_delay(base, {{0.0, 0.1}}, 0.9), std::invalid_argument);
}

TEST_CASE("random glitch layout is deterministic, disjoint, and adds up") {
  const auto g1 = random_glitch_intervals(1e-2, 20, 0.5, 9.5, 4242);
  const auto g2 = random_glitch_intervals(1e-2, 20, 0.5, 9.5, 4242);
  const auto g3 = random_glitch_intervals(1e-2, 20, 0.5, 9.5, 4243);
  REQUIRE(g1.size() == 20);
  double total = 0.0;
  for (std::size_t i = 0; i < g1.size(); ++i) {
    CHECK(g1[i].start == g2[i].start);
    CHECK(g1[i].start >= 0.5);
    CHECK(g1[i].start + g1[i].width <= 9.5);
    if (i > 0) CHECK(g1[i].start >= g1[i - 1].start + g1[i - 1].width);
    total += g1[i].width;
  }
  CHECK(total == doctest::Approx(1e-2).epsilon(1e-12));
  bool differs = false;
  for (std::size_t i = 0; i < g1.size(); ++i) differs = differs || g1[i].start != g3[i].start;
  CHECK(differs);
}

TEST_CASE("truncated sinusoid: support and energy") {
  const double two_pi = 2.0 * 3.14159265358979323846;
  const auto w = truncated_sinusoid(1.0, 1.0, 0.0, two_pi);
  CHECK(w.dim() == 1);
  CHECK(w.eval(-0.5)[0] == 0.0);
  CHECK(w.eval(two_pi + 0.1)[0] == 0.0);
  CHECK(w.eval(two_pi / 4.0)[0] == doctest::Approx(1.0).epsilon(1e-12));
  // integral of sin^2 over one period is pi.
  CHECK(w.l2_norm_on(0.0, two_pi) == doctest::Approx(std::sqrt(3.14159265358979323846)).epsilon(1e-9));
  CHECK(w.sup_norm1() == 1.0);
}

TEST_CASE("decaying exponential: tail energy") {
  const auto w = decaying_exponential(1.0, 1.0, 0.0);
  CHECK(w.eval(-1.0)[0] == 0.0);
  CHECK(w.eval(1.0)[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  // integral of e^{-2t} over [0, inf) is 1/2.
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(w.l2_norm_on(0.0, inf) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
  CHECK_THROWS_AS(decaying_exponential(1.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("burst train: silence between bursts") {
  const auto w = burst_train(2.0, 10.0, 1.0, 0.5, 1.0, 3);
  CHECK(w.eval(0.5)[0] == 0.0);
  CHECK(w.eval(1.2)[0] != 0.0);
  CHECK(w.eval(1.8)[0] == 0.0);   // in the gap after the first burst
  CHECK(w.eval(2.7)[0] != 0.0);   // second burst: starts at 2.5
  CHECK(w.eval(10.0)[0] == 0.0);  // past the train
  CHECK(w.sup_norm1() == 2.0);
  CHECK(w.l2_norm_on(0.0, 20.0) > 0.0);
}

TEST_CASE("zero disturbance and inputs") {
  const auto w = zero_disturbance(2);
  CHECK(w.eval(3.0) == Vec{0.0, 0.0});
  CHECK(w.l2_norm_on(0.0, 100.0) == 0.0);
  CHECK(w.sup_norm1() == 0.0);

  CHECK(zero_input(3).eval(1.0) == Vec{0.0, 0.0, 0.0});
  CHECK(constant_input(Vec{1.0, -2.0}).eval(5.0) == Vec{1.0, -2.0});
  CHECK(constant_input(Vec{1.0, -2.0}).sup_norm1() == 3.0);
  const auto u = sinusoid_input(2.0, 3.0, 1);
  CHECK(u.eval(0.0)[0] == 0.0);
  CHECK(u.sup_norm1() == 2.0);
}
