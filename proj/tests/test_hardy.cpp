#include <doctest.h>

#include <cmath>
#include <vector>

#include "heislap/errors.hpp"
#include "heislap/hardy.hpp"

using namespace heislap;

namespace {

constexpr double kPi = 3.14159265358979323846;

Polygon unit_square() { return Polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

Polygon disk64() {
  std::vector<Point2> v;
  for (int k = 0; k < 64; ++k) {
    double t = 2.0 * kPi * k / 64;
    v.push_back({std::cos(t), std::sin(t)});
  }
  return Polygon(v);
}

Polygon l_shape() {
  return Polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
}

}  // namespace

TEST_CASE("square refinement sweep: monotone, below the convex value") {
  HardyEstimate est = estimate_hardy_refined(unit_square(), 1.0 / 16, 3);
  REQUIRE(est.refinement_history.size() == 3);
  // frozen from converged pencil runs of this discretization
  CHECK(est.refinement_history[0].second == doctest::Approx(1.5616).epsilon(2e-3));
  CHECK(est.refinement_history[1].second == doctest::Approx(1.6243).epsilon(2e-3));
  CHECK(est.refinement_history[2].second == doctest::Approx(1.6720).epsilon(2e-3));
  for (std::size_t k = 1; k < 3; ++k)
    CHECK(est.refinement_history[k].second >=
          est.refinement_history[k - 1].second - 1e-10);
  // convex cross-section: the true constant is 2 and the discrete estimate
  // approaches it from below
  CHECK(est.c_est <= 2.0 * 1.01);
  CHECK(est.mesh == doctest::Approx(1.0 / 64));
}

TEST_CASE("disk sweep stays below the convex value, monotone") {
  HardyEstimate est = estimate_hardy_refined(disk64(), 1.0 / 16, 3);
  for (std::size_t k = 1; k < est.refinement_history.size(); ++k)
    CHECK(est.refinement_history[k].second >=
          est.refinement_history[k - 1].second - 1e-10);
  CHECK(est.c_est == doctest::Approx(1.4207).epsilon(2e-3));
  CHECK(est.c_est <= 2.0 * 1.01);
}

TEST_CASE("L-shaped section sits in the Lipschitz window") {
  HardyEstimate est = estimate_hardy_refined(l_shape(), 1.0 / 16, 3);
  CHECK(est.c_est >= 1.7);
  CHECK(est.c_est <= 4.0 * 1.01);
  for (std::size_t k = 1; k < est.refinement_history.size(); ++k)
    CHECK(est.refinement_history[k].second >=
          est.refinement_history[k - 1].second - 1e-10);
}

TEST_CASE("scale invariance") {
  DistanceField f1(unit_square(), 1.0 / 32);
  Polygon scaled({{0, 0}, {3, 0}, {3, 3}, {0, 3}});
  DistanceField f3(scaled, 3.0 / 32);
  HardyEstimate e1 = estimate_hardy_constant(f1, 1e-12, 30000);
  HardyEstimate e3 = estimate_hardy_constant(f3, 1e-12, 30000);
  CHECK(std::abs(e1.c_est - e3.c_est) <= 1e-8);
}

TEST_CASE("rayleigh residual is reported and small") {
  DistanceField f(unit_square(), 1.0 / 32);
  HardyEstimate est = estimate_hardy_constant(f);
  CHECK(est.rayleigh_residual >= 0.0);
  CHECK(est.rayleigh_residual <= 1e-2);
  CHECK(est.iterations >= 1);
}

TEST_CASE("hardy_bound_used") {
  HardyEstimate est;
  est.c_est = 1.93;
  CHECK(hardy_bound_used(est, CMode::convex) == 2.0);
  CHECK(hardy_bound_used(est, CMode::worst_case) == 4.0);
  CHECK(hardy_bound_used(est, CMode::measured) == 2.0);  // clamped to the floor
  est.c_est = 2.5;
  CHECK(hardy_bound_used(est, CMode::measured) == 2.5);
}

TEST_CASE("input validation") {
  Polygon tiny({{0, 0}, {0.05, 0}, {0.05, 0.05}, {0, 0.05}});
  DistanceField f(tiny, 0.02);
  CHECK_THROWS_AS(estimate_hardy_constant(f), config_error);  // < 10 nodes
  DistanceField ok(unit_square(), 1.0 / 16);
  CHECK_THROWS_AS(estimate_hardy_constant(ok, -1.0), config_error);
  CHECK_THROWS_AS(estimate_hardy_refined(unit_square(), 1.0 / 16, 0), config_error);
}

TEST_CASE("iteration budget exhaustion reports the last residual") {
  DistanceField f(unit_square(), 1.0 / 16);
  CHECK_THROWS_WITH_AS(estimate_hardy_constant(f, 1e-8, 1),
                       doctest::Contains("residual"), convergence_error);
}
