#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "fdecert/certifier.hpp"
#include "fdecert/integrator.hpp"
#include "fdecert/krasovskii.hpp"
#include "fdecert/model.hpp"
#include "fdecert/rng.hpp"
#include "fdecert/signals.hpp"

using namespace fdecert;

TEST_CASE("functional construction validates its matrices") {
  CHECK_THROWS_AS(QuadraticFunctional(Mat::from_rows({{1.0, 0.1}, {0.0, 1.0}}), {}, {}, 1.0),
                  std::invalid_argument);  // not symmetric
  CHECK_THROWS_AS(QuadraticFunctional(Mat::from_rows({{-1.0}}), {}, {}, 1.0),
                  std::domain_error);  // not positive definite
  CHECK_THROWS_AS(QuadraticFunctional(Mat::from_rows({{1.0}}),
                                      Mat::from_rows({{-0.5}}), {}, 1.0),
                  std::domain_error);  // memory weight must be PSD
  CHECK_THROWS_AS(QuadraticFunctional(Mat::from_rows({{1.0}}), Mat::from_rows({{1.0}}), {}, 0.0),
                  std::invalid_argument);  // memory terms need a positive span

  const QuadraticFunctional ok(Mat::from_rows({{2.0, 0.0}, {0.0, 1.0}}),
                               Mat::identity(2), {}, 0.5);
  CHECK(ok.lambda_min_p() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ok.lambda_max_p() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(ok.lambda_max_q() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("memoryless functional is the quadratic form at zero") {
  const QuadraticFunctional v(Mat::from_rows({{3.0}}), {}, {}, 0.0);
  const auto phi = HistorySegment::constant(1.0, Vec{2.0}, 4);
  CHECK(eval_functional(v, phi) == 12.0);
}

TEST_CASE("constant history: both memory integrals have closed forms") {
  // v = phi(0)^2 + int_{-1}^0 phi^2 = 1 + 1 = 2 exactly on a constant.
  const QuadraticFunctional vq(Mat::from_rows({{1.0}}), Mat::from_rows({{1.0}}), {}, 1.0);
  const auto one = HistorySegment::constant(1.0, Vec{1.0}, 16);
  CHECK(eval_functional(vq, one) == doctest::Approx(2.0).epsilon(1e-14));

  // Double-integral term on a constant collapses to r^2/2 times the weight;
  // the integrand is linear in s, so the trapezoid rule is exact.
  const QuadraticFunctional vr(Mat::from_rows({{1.0}}), {}, Mat::from_rows({{2.0}}), 1.0);
  CHECK(eval_functional(vr, one) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("linear history against the closed form") {
  // phi(s) = 1 + s: int_{-1}^0 (1+s)^2 ds = 1/3.
  const QuadraticFunctional v(Mat::from_rows({{1.0}}), Mat::from_rows({{1.0}}), {}, 1.0);
  const auto phi = HistorySegment::from_function(
      1.0, 1, [](double s) { return Vec{1.0 + s}; }, 101);
  CHECK(eval_functional(v, phi) == doctest::Approx(1.0 + 1.0 / 3.0).epsilon(5e-5));
}

TEST_CASE("longer segments are read only on the functional's window") {
  // phi(s) = s with v-span 1 inside a segment of span 2; the head node at
  // -1 is interpolated. int_{-1}^0 s^2 ds = 1/3.
  const QuadraticFunctional v(Mat::from_rows({{1.0}}), Mat::from_rows({{1.0}}), {}, 1.0);
  const auto phi = HistorySegment::from_function(
      2.0, 1, [](double s) { return Vec{s}; }, 40);  // -1 is not a mesh node
  CHECK(eval_functional(v, phi) == doctest::Approx(1.0 / 3.0).epsilon(2e-3));
}

TEST_CASE("degree-two homogeneity is exact for power-of-two scalings") {
  const QuadraticFunctional v(Mat::from_rows({{1.5, 0.25}, {0.25, 2.0}}),
                              Mat::identity(2), Mat::identity(2), 0.75);
  Rng rng(3);
  for (int rep = 0; rep < 10; ++rep) {
    const auto phi = random_segment(2, 0.75, 1.0, 9, rng);
    std::vector<double> scaled_vals;
    for (std::size_t k = 0; k < phi.knots(); ++k) {
      scaled_vals.push_back(2.0 * phi.node_value(k)[0]);
      scaled_vals.push_back(2.0 * phi.node_value(k)[1]);
    }
    const HistorySegment phi2(0.75, phi.mesh_theta(), scaled_vals, 2);
    CHECK(eval_functional(v, phi2) == 4.0 * eval_functional(v, phi));
  }
}

TEST_CASE("sandwich bounds carry the eigenvalue coefficients") {
  // a2 coefficient: 2 + 1*1 + 1^2/2 * 1 = 3.5; a1 coefficient: lambda_min(P) = 1.
  const QuadraticFunctional v(Mat::from_rows({{2.0, 0.0}, {0.0, 1.0}}),
                              Mat::identity(2), Mat::identity(2), 1.0);
  const auto [a1, a2] = sandwich_bounds(v);
  CHECK(a1(2.0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(a2(2.0) == doctest::Approx(14.0).epsilon(1e-12));
  CHECK(a1.has_analytic_inverse());
  CHECK(a2.has_analytic_inverse());
  CHECK(inverse(a2, 3.5) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sandwich inequality holds on random segments") {
  const QuadraticFunctional v(Mat::from_rows({{1.0}}), Mat::from_rows({{0.5}}),
                              Mat::from_rows({{0.25}}), 0.5);
  const auto [a1, a2] = sandwich_bounds(v);
  Rng rng(21);
  for (int rep = 0; rep < 500; ++rep) {
    const auto phi = random_segment(1, 0.5, 5.0, 12, rng);
    const double val = eval_functional(v, phi);
    const double lo = a1(std::abs(phi.value_at_zero()[0]));
    const double hi = a2(phi.sup_norm());
    CHECK(val >= lo - 1e-9);
    CHECK(val <= hi + 1e-9);
  }
}

TEST_CASE("window ladder: adjacent rungs plus cumulative prefixes") {
  const auto w = window_ladder(1.0, 3.0, 4);
  REQUIRE(w.size() == 7);
  CHECK(w[0] == std::pair{1.0, 1.5});
  CHECK(w[3] == std::pair{2.5, 3.0});
  CHECK(w[4] == std::pair{1.0, 2.0});
  CHECK(w[6] == std::pair{1.0, 3.0});
  CHECK_THROWS_AS(window_ladder(1.0, 1.0, 4), std::invalid_argument);
}

TEST_CASE("integrated decrease on the equality case stays within quadrature error") {
  // x' = -x with v = x^2 satisfies v(t) - v(s) = -int 2 x^2 exactly.
  const auto rhs = linear_delay_rhs(Mat::from_rows({{-1.0}}), Mat::zero(1, 1),
                                    constant_delay(0.1));
  const QuadraticFunctional v(Mat::from_rows({{1.0}}), {}, {}, 0.0);
  const auto a3 = kinf_quadratic(2.0);
  const auto phi = HistorySegment::constant(0.1, Vec{1.0}, 4);
  const auto traj = integrate(rhs, phi, 0.0, 2.0, 1e-3);
  const auto windows = certified_window_ladder(traj, 0.0, 6);
  const auto rep = decrease_check(v, a3, traj, windows, 1e-6);
  CHECK(rep.pass);
  for (const auto& wdw : rep.windows) {
    CHECK(std::abs(wdw.lhs - wdw.rhs) <= 1e-6);
  }
}

TEST_CASE("integrated decrease flags growth") {
  const auto rhs = linear_delay_rhs(Mat::from_rows({{1.0}}), Mat::zero(1, 1),
                                    constant_delay(0.1));
  const QuadraticFunctional v(Mat::from_rows({{1.0}}), {}, {}, 0.0);
  const auto phi = HistorySegment::constant(0.1, Vec{1.0}, 4);
  const auto traj = integrate(rhs, phi, 0.0, 2.0, 0.01);
  const auto rep = decrease_check(v, kinf_quadratic(2.0), traj,
                                  certified_window_ladder(traj, 0.0, 4), 1e-4);
  CHECK_FALSE(rep.pass);
  CHECK(rep.worst_deficit > 1.0);
}

TEST_CASE("decrease windows must not reach before the functional's reach") {
  const auto rhs = linear_delay_rhs(Mat::from_rows({{-2.0}}), Mat::from_rows({{1.0}}),
                                    constant_delay(0.5));
  const QuadraticFunctional v(Mat::from_rows({{1.0}}), Mat::from_rows({{1.0}}), {}, 0.5);
  const auto phi = HistorySegment::constant(0.5, Vec{1.0}, 8);
  const auto traj = integrate(rhs, phi, 0.0, 3.0, 0.01);
  CHECK_THROWS_AS(decrease_check(v, kinf_quadratic(0.5), traj, {{0.2, 1.0}}, 1e-4),
                  std::invalid_argument);
  CHECK_NOTHROW(decrease_check(v, kinf_quadratic(0.5), traj, {{0.5, 1.0}}, 1e-4));
}
