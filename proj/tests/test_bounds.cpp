#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "heislap/bounds.hpp"
#include "heislap/errors.hpp"
#include "heislap/operator.hpp"

using namespace heislap;

namespace {

constexpr double kPi = 3.14159265358979323846;

Polygon unit_square() { return Polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

struct CubeRun {
  Grid3D grid;
  DistanceField field;
  Spectrum spec;
};

CubeRun cube_run(double h, int m) {
  Polygon sq = unit_square();
  Grid3D grid(sq, 0.0, 1.0, h, h);
  DistanceField field(sq, h);
  Spectrum spec = lobpcg_smallest(assemble_heisenberg(grid).matrix, m, 1e-9, 600, 21);
  return {std::move(grid), std::move(field), std::move(spec)};
}

}  // namespace

TEST_CASE("riesz mean basics") {
  std::vector<double> evs{1.0, 2.0, 3.0};
  CHECK(riesz_mean(evs, 2.5) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(riesz_mean(std::vector<double>{}, 10.0) == 0.0);
  CHECK(riesz_mean(evs, 1.0) == 0.0);
  CHECK(riesz_mean(evs, 0.5) == 0.0);
}

TEST_CASE("riesz mean is piecewise linear with slope = counting function") {
  std::vector<double> evs{1.0, 1.0, 2.0, 5.0};
  auto slope = [&](double lam) {
    double d = 1e-7;
    return (riesz_mean(evs, lam + d) - riesz_mean(evs, lam - d)) / (2 * d);
  };
  CHECK(slope(1.5) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(slope(3.0) == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(slope(6.0) == doctest::Approx(4.0).epsilon(1e-6));
  // convexity on a lambda sweep
  double prev_slope = -1.0;
  for (double lam = 0.5; lam < 7.0; lam += 0.5) {
    double s = slope(lam);
    CHECK(s >= prev_slope - 1e-9);
    prev_slope = s;
  }
}

TEST_CASE("berezin rhs closed forms") {
  CHECK(berezin_rhs(96.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(berezin_rhs(5.0, 0.0) == 0.0);
  CHECK(berezin_rhs(1.0, 2.0) == doctest::Approx(1.0 / 12).epsilon(1e-15));
  CHECK_THROWS_AS(berezin_rhs(0.0, 1.0), config_error);
  CHECK_THROWS_AS(berezin_rhs(1.0, -1.0), config_error);
}

TEST_CASE("theorem rhs at c=2 collapses to the corollary") {
  std::mt19937 gen(123);
  std::uniform_real_distribution<double> uv(0.1, 10.0);
  std::uniform_real_distribution<double> ur(0.05, 2.0);
  std::uniform_real_distribution<double> ul(0.0, 100.0);
  for (int trial = 0; trial < 1000; ++trial) {
    double volume = uv(gen), r = ur(gen), lambda = ul(gen);
    double thm = theorem_rhs(volume, volume / r, 2.0, lambda);
    double cor = corollary_rhs(volume, r, lambda);
    CHECK(std::abs(thm - cor) <= 1e-12 * std::max(1.0, std::abs(cor)));
  }
}

TEST_CASE("theorem rhs domain checks") {
  CHECK_THROWS_AS(theorem_rhs(1.0, 1.0, 1.9, 1.0), config_error);
  CHECK(theorem_rhs(1.0, 2.0, 2.0, 0.0) == 0.0);
  CHECK(theorem_rhs(1.0, 2.0, 3.5, 5.0) >= 0.0);
}

TEST_CASE("corollary rhs clamps and closed forms") {
  // remainder dominates for small lambda
  CHECK(corollary_rhs(1.0, 1.0, 0.01) == 0.0);
  // volume = 2^7 3^2 sqrt(3), R = 1, lambda = 1 -> volume/96 - 1
  double volume = 1152.0 * std::sqrt(3.0);
  CHECK(corollary_rhs(volume, 1.0, 1.0) ==
        doctest::Approx(volume / 96.0 - 1.0).epsilon(1e-13));
  CHECK(corollary_rhs(volume, 1.0, 0.0) == 0.0);
}

TEST_CASE("theorem rhs never exceeds berezin rhs") {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    double volume = u(gen), l = u(gen), lambda = 20.0 * u(gen);
    double c = 2.0 + u(gen);
    CHECK(theorem_rhs(volume, l, c, lambda) <=
          berezin_rhs(volume, lambda) * (1 + 1e-14));
  }
}

TEST_CASE("scaling identities") {
  std::mt19937 gen(31);
  std::uniform_real_distribution<double> u(0.5, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    double volume = u(gen), lambda = 10.0 * u(gen), t = u(gen), l = u(gen);
    double lhs = berezin_rhs(volume / (t * t * t * t), t * t * lambda);
    CHECK(lhs == doctest::Approx(t * t * berezin_rhs(volume, lambda)).epsilon(1e-12));
    // Heisenberg dilation: volume ~ t^4, l ~ t^3, lambda ~ t^-2
    double t4 = t * t * t * t, t3 = t * t * t;
    double thm_scaled = theorem_rhs(t4 * volume, t3 * l, 2.7, lambda / (t * t));
    double thm = theorem_rhs(volume, l, 2.7, lambda);
    CHECK(thm_scaled == doctest::Approx(thm / (t * t)).epsilon(1e-11));
  }
}

TEST_CASE("leading term oracle") {
  double v = 2.0 * kPi * kPi;
  CHECK(leading_term_oracle(v, 1.0, 1) == doctest::Approx(1.0 / 6).epsilon(1e-14));
  CHECK_THROWS_AS(leading_term_oracle(1.0, 1.0, 0), config_error);

  // nondecreasing in k_max, bounded by the Berezin rhs
  double prev = 0.0;
  for (int k : {1, 2, 4, 16, 64, 256}) {
    double val = leading_term_oracle(3.0, 2.0, k);
    CHECK(val >= prev);
    CHECK(val <= berezin_rhs(3.0, 2.0));
    prev = val;
  }

  // partial-sum tail at k_max = 1000: the true relative gap is
  // ~ 1/(2(2k_max-1)) / (pi^2/8) = 2.03e-4
  double gap = (berezin_rhs(1.0, 1.0) - leading_term_oracle(1.0, 1.0, 1000)) /
               berezin_rhs(1.0, 1.0);
  CHECK(gap == doctest::Approx(2.0264e-4).epsilon(2e-3));
}

TEST_CASE("weyl ratio basics") {
  std::vector<double> evs{1.0, 2.0, 3.0};
  CHECK(weyl_ratio(evs, 1.0, 0.5) == 0.0);
  CHECK(weyl_ratio(evs, 1.0, 2.0) ==
        doctest::Approx(96.0 * 1.0 / 8.0).epsilon(1e-14));
  CHECK_THROWS_AS(weyl_ratio(evs, 1.0, 0.0), config_error);
  // pure function: same inputs, same output
  CHECK(weyl_ratio(evs, 2.0, 1.75) == weyl_ratio(evs, 2.0, 1.75));
}

TEST_CASE("lambda grid construction") {
  std::vector<double> g = make_lambda_grid(1.0, 16.0, 5, true);
  CHECK(g.front() == doctest::Approx(1.0));
  CHECK(g.back() == doctest::Approx(16.0));
  CHECK(g[1] == doctest::Approx(2.0).epsilon(1e-12));
  std::vector<double> lin = make_lambda_grid(0.0, 1.0, 3, false);
  CHECK(lin[1] == doctest::Approx(0.5));
  CHECK_THROWS_AS(make_lambda_grid(1.0, 2.0, 1, true), config_error);
  CHECK_THROWS_AS(make_lambda_grid(2.0, 1.0, 5, true), config_error);
  CHECK_THROWS_AS(make_lambda_grid(0.0, 1.0, 5, true), config_error);
}

TEST_CASE("cylinder Hardy check on computed eigenpairs") {
  CubeRun run = cube_run(1.0 / 8, 5);
  REQUIRE(run.spec.all_converged());
  for (int k = 0; k < 5; ++k) {
    PairCheck pc = check_cylinder_hardy(run.spec.vectors[k], run.spec.eigenvalues[k],
                                        run.field, run.grid, 2.0);
    CHECK(pc.rhs == doctest::Approx(4.0 * run.spec.eigenvalues[k]));
    CHECK(pc.lhs <= pc.rhs * 1.1);
    CHECK(pc.lhs > 0.0);
  }
  CHECK_THROWS_AS(check_cylinder_hardy(run.spec.vectors[0], 1.0, run.field,
                                       run.grid, 1.0),
                  config_error);
}

TEST_CASE("boundary-layer estimate on computed eigenpairs") {
  CubeRun run = cube_run(1.0 / 8, 5);
  double r = inradius(run.field);
  for (int k = 0; k < 5; ++k) {
    double prev_lhs = -1.0, prev_rhs = -1.0;
    for (double frac : {0.25, 0.5, 1.0}) {
      PairCheck pc = check_boundary_estimate(run.spec.vectors[k],
                                             run.spec.eigenvalues[k], run.field,
                                             run.grid, 2.0, frac * r);
      CHECK(pc.lhs <= pc.rhs * 1.1);
      CHECK(pc.lhs >= prev_lhs);  // nondecreasing in beta
      CHECK(pc.rhs > prev_rhs);   // strictly increasing in beta
      prev_lhs = pc.lhs;
      prev_rhs = pc.rhs;
    }
  }
  CHECK_THROWS_AS(check_boundary_estimate(run.spec.vectors[0],
                                          run.spec.eigenvalues[0], run.field,
                                          run.grid, 2.0, 2.0 * r),
                  config_error);
  CHECK_THROWS_AS(check_boundary_estimate(run.spec.vectors[0],
                                          run.spec.eigenvalues[0], run.field,
                                          run.grid, 2.0, 0.0),
                  config_error);
}

TEST_CASE("remainder feasibility step from the first eigenvalue") {
  // with u = v1 and beta = R: 1/(c^{2+2/c} lambda_1^{1+1/c} (4+4/c) R)
  // <= R^{1+2/c} / 4
  CubeRun run = cube_run(1.0 / 8, 1);
  double lambda1 = run.spec.eigenvalues[0];
  double r = inradius(run.field);
  double c = 2.0;
  double lhs = 1.0 / (std::pow(c, 2 + 2 / c) * std::pow(lambda1, 1 + 1 / c) *
                      (4 + 4 / c) * r);
  double rhs = std::pow(r, 1 + 2 / c) / 4.0;
  CHECK(lhs <= rhs * 1.1);
}

TEST_CASE("bound report over a lambda grid") {
  CubeRun run = cube_run(1.0 / 8, 20);
  GeometrySummary geom = summarize_geometry(run.field, 1.0);
  std::vector<double> grid = make_lambda_grid(
      run.spec.eigenvalues.front(), 0.9 * run.spec.max_eigenvalue(), 40, true);
  BoundReport report = check_bounds(run.spec, geom, 2.0, grid, true);
  REQUIRE(report.rows.size() == 40);
  CHECK_FALSE(report.any_failure);
  for (const BoundRow& row : report.rows) {
    CHECK(row.rhs_theorem <= row.rhs_berezin * (1 + 1e-14));
    CHECK(row.margin_theorem <= row.margin_berezin + 1e-14);
    REQUIRE(row.rhs_corollary.has_value());
    CHECK_FALSE(row.truncated);
  }

  // fabricated tiny spectrum + huge lambda: forced violation
  Spectrum fake;
  fake.eigenvalues = {0.001};
  fake.residuals = {0.0};
  fake.converged = {1};
  std::vector<double> big{0.5, 2.0};
  BoundReport bad = check_bounds(fake, geom, 2.0, big, true);
  CHECK(bad.any_failure);
  CHECK(bad.rows[0].truncated);
}

TEST_CASE("report scaling coherence under the Heisenberg dilation") {
  // t = 2: Omega' = (0,2)^2 x (0,4) at spacings (2h, 4h); lambda -> lambda/4,
  // volume -> 16 volume; margins scale by t^-2 against the matched grid
  Polygon sq = unit_square();
  Grid3D g1(sq, 0.0, 1.0, 0.25, 0.25);
  Spectrum s1 = lobpcg_smallest(assemble_heisenberg(g1).matrix, 5, 1e-11, 800, 3);
  Polygon sq2({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  Grid3D g2(sq2, 0.0, 4.0, 0.5, 1.0);
  Spectrum s2 = lobpcg_smallest(assemble_heisenberg(g2).matrix, 5, 1e-11, 800, 3);

  GeometrySummary geom1;
  geom1.area_omega = 1.0;
  geom1.inradius = 0.5;
  geom1.height = 1.0;
  geom1.volume_Omega = 1.0;
  geom1.l_omega = 2.0;
  GeometrySummary geom2;
  geom2.area_omega = 4.0;
  geom2.inradius = 1.0;
  geom2.height = 4.0;
  geom2.volume_Omega = 16.0;
  geom2.l_omega = 16.0;

  std::vector<double> grid1 = make_lambda_grid(s1.eigenvalues[0],
                                               0.9 * s1.max_eigenvalue(), 10, true);
  std::vector<double> grid2;
  for (double lam : grid1) grid2.push_back(lam / 4.0);

  BoundReport r1 = check_bounds(s1, geom1, 2.0, grid1, true);
  BoundReport r2 = check_bounds(s2, geom2, 2.0, grid2, true);
  for (std::size_t i = 0; i < r1.rows.size(); ++i) {
    CHECK(r2.rows[i].lhs == doctest::Approx(r1.rows[i].lhs / 4.0).epsilon(1e-8));
    CHECK(r2.rows[i].rhs_berezin ==
          doctest::Approx(r1.rows[i].rhs_berezin / 4.0).epsilon(1e-12));
    CHECK(r2.rows[i].rhs_theorem ==
          doctest::Approx(r1.rows[i].rhs_theorem / 4.0).epsilon(1e-12));
  }
}

TEST_CASE("remainder exponent fit is finite on a computed spectrum") {
  CubeRun run = cube_run(1.0 / 8, 20);
  std::vector<double> grid = make_lambda_grid(
      run.spec.eigenvalues.front(), 0.9 * run.spec.max_eigenvalue(), 30, true);
  double fit = remainder_exponent_fit(run.spec, 1.0, grid);
  CHECK(std::isfinite(fit));
  CHECK(fit > 0.0);  // the gap grows with lambda in the computed window
}
