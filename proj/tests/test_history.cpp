#include "doctest.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fdecert/history.hpp"
#include "fdecert/rng.hpp"

using namespace fdecert;

TEST_CASE("constant segment evaluates to its value everywhere") {
  const auto phi = HistorySegment::constant(1.0, Vec{2.0, -3.0}, 8);
  CHECK(phi.span() == 1.0);
  CHECK(phi.dim() == 2);
  CHECK(phi.knots() == 8);
  for (double th : {-1.0, -0.37, 0.0}) {
    const Vec v = phi.eval(th);
    CHECK(v[0] == 2.0);
    CHECK(v[1] == -3.0);
  }
  CHECK(phi.value_at_zero()[1] == -3.0);
  CHECK(phi.sup_norm() == doctest::Approx(std::sqrt(13.0)).epsilon(1e-14));
  CHECK(phi.local_slope_bound() == 0.0);
}

TEST_CASE("from_function hits nodes exactly and interpolates linearly between them") {
  const auto phi = HistorySegment::from_function(
      2.0, 1, [](double th) { return Vec{3.0 * th + 1.0}; }, 11);
  CHECK(phi.mesh_theta().front() == -2.0);
  CHECK(phi.mesh_theta().back() == 0.0);
  // The function is linear, so piecewise-linear interpolation is exact.
  for (double th : {-2.0, -1.73, -0.5, -0.1, 0.0}) {
    CHECK(phi.eval(th)[0] == doctest::Approx(3.0 * th + 1.0).epsilon(1e-14));
  }
}

TEST_CASE("evaluation clamps outside the window") {
  const auto phi = HistorySegment::from_function(
      1.0, 1, [](double th) { return Vec{th}; }, 5);
  CHECK(phi.eval(-5.0)[0] == -1.0);
  CHECK(phi.eval(1.0)[0] == 0.0);
}

TEST_CASE("segment construction rejects bad meshes") {
  CHECK_THROWS_AS(HistorySegment(0.0, {-0.0, 0.0}, {1.0, 1.0}, 1), std::invalid_argument);
  CHECK_THROWS_AS(HistorySegment(1.0, {-1.0}, {1.0}, 1), std::invalid_argument);
  CHECK_THROWS_AS(HistorySegment(1.0, {-1.0, -1.0, 0.0}, {1.0, 1.0, 1.0}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(HistorySegment(1.0, {-0.5, 0.0}, {1.0, 1.0}, 1), std::invalid_argument);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(HistorySegment(1.0, {-1.0, 0.0}, {1.0, inf}, 1), std::invalid_argument);
}

TEST_CASE("random segments stay strictly inside the requested ball") {
  Rng rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    const auto phi = random_segment(3, 0.5, 2.0, 12, rng);
    CHECK(phi.sup_norm() < 2.0);
    CHECK(phi.span() == 0.5);
    CHECK(phi.knots() == 12);
  }
}

TEST_CASE("random segments replay from the same seed") {
  Rng a(123), b(123), c(124);
  const auto pa = random_segment(2, 1.0, 1.0, 9, a);
  const auto pb = random_segment(2, 1.0, 1.0, 9, b);
  const auto pc = random_segment(2, 1.0, 1.0, 9, c);
  bool equal = true, differs = false;
  for (std::size_t k = 0; k < pa.knots(); ++k) {
    for (int i = 0; i < 2; ++i) {
      equal = equal && pa.node_value(k)[i] == pb.node_value(k)[i];
      differs = differs || pa.node_value(k)[i] != pc.node_value(k)[i];
    }
  }
  CHECK(equal);
  CHECK(differs);
}

TEST_CASE("reset_from_window shifts absolute times onto the theta grid") {
  HistorySegment seg;
  const std::vector<double> times{4.0, 4.25, 4.75, 5.0};
  const std::vector<double> states{1.0, 2.0, 3.0, 4.0};
  seg.reset_from_window(1.0, 1, times, states, 5.0);
  CHECK(seg.span() == 1.0);
  CHECK(seg.eval(-1.0)[0] == 1.0);
  CHECK(seg.eval(-0.75)[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(seg.eval(0.0)[0] == 4.0);
  CHECK(seg.eval(-0.5)[0] == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("reset_from_window collapses rounding collisions onto the pinned ends") {
  // The second sample sits below the pinned -span node once shifted; the
  // collapse keeps a strictly ascending mesh and the later value.
  HistorySegment seg;
  const std::vector<double> times{4.0, 4.0 + 1e-18, 4.5, 5.0};
  const std::vector<double> states{7.0, 1.0, 2.0, 3.0};
  seg.reset_from_window(1.0, 1, times, states, 5.0);
  CHECK(seg.eval(-1.0)[0] == 1.0);
  CHECK(seg.eval(0.0)[0] == 3.0);
  CHECK(seg.eval(-0.5)[0] == 2.0);
}
