#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gpnex/lp.hpp"

using namespace gpnex;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

VectorXd vec(std::initializer_list<double> values) {
  VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("standard form: basic production LP") {
  // min -3x - 5y s.t. x + 2y + s1 = 8, 3x + y + s2 = 9, all >= 0
  MatrixXd A(2, 4);
  A << 1, 2, 1, 0, 3, 1, 0, 1;
  const LpResult res = solve_standard_min(vec({-3, -5, 0, 0}), A, vec({8, 9}));
  REQUIRE(res.status == LpStatus::Optimal);
  CHECK(res.x[0] == doctest::Approx(2.0));
  CHECK(res.x[1] == doctest::Approx(3.0));
  CHECK(res.objective == doctest::Approx(-21.0));
}

TEST_CASE("standard form: infeasible system") {
  // x + y = -1 with x, y >= 0 has no solution (after sign flip: x + y = 1 with
  // flipped column signs still forces negativity)
  MatrixXd A(2, 2);
  A << 1, 1, 1, 1;
  const LpResult res = solve_standard_min(vec({1, 1}), A, vec({1, 2}));
  CHECK(res.status == LpStatus::Infeasible);
}

TEST_CASE("inequality form: max-margin style problem") {
  // maximize d s.t. x - d >= 0, -x - d >= -4, d <= 10
  // optimum: x = 2, d = 2
  MatrixXd G(3, 2);
  G << -1, 1, 1, 1, 0, 1;
  const LpResult res = solve_inequality_lp_max(vec({0, 1}), G, vec({0, 4, 10}));
  REQUIRE(res.status == LpStatus::Optimal);
  CHECK(res.objective == doctest::Approx(2.0));
  CHECK(res.x[0] == doctest::Approx(2.0));
  CHECK(res.x[1] == doctest::Approx(2.0));
  // returned point is feasible
  CHECK(((G * res.x - vec({0, 4, 10})).array() <= 1e-9).all());
}

TEST_CASE("inequality form: infeasible constraints") {
  // x <= -1 and -x <= -1 (i.e. x >= 1) cannot hold together; objective bounded
  MatrixXd G(3, 1);
  G << 1, -1, 1;
  const LpResult res = solve_inequality_lp_max(vec({1}), G, vec({-1, -1, 5}));
  CHECK(res.status == LpStatus::Infeasible);
}

TEST_CASE("inequality form: many redundant rows") {
  // x <= 1 repeated with varying slack; max x = 1
  const int m = 500;
  MatrixXd G(m, 1);
  VectorXd h(m);
  for (int i = 0; i < m; ++i) {
    G(i, 0) = 1.0;
    h[i] = 1.0 + (i % 7);
  }
  h[137] = 1.0;  // binding row
  const LpResult res = solve_inequality_lp_max(vec({1}), G, h);
  REQUIRE(res.status == LpStatus::Optimal);
  CHECK(res.objective == doctest::Approx(1.0));
}

TEST_CASE("degenerate vertices terminate under Bland's rule") {
  // square with an extra diagonal through the corner (degenerate at (1,1))
  MatrixXd G(5, 2);
  G << 1, 0, 0, 1, 1, 1, -1, 0, 0, -1;
  const LpResult res = solve_inequality_lp_max(vec({1, 1}), G, vec({1, 1, 2, 0, 0}));
  REQUIRE(res.status == LpStatus::Optimal);
  CHECK(res.objective == doctest::Approx(2.0));
}

TEST_CASE("random 2-D instances agree with vertex enumeration") {
  // independent oracle: enumerate all constraint-pair intersections, keep the
  // feasible ones, take the best objective
  uint64_t state = 31337;
  auto uniform = [&]() {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return double((z ^ (z >> 31)) >> 11) * 0x1.0p-53;
  };

  int optimal_count = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int extra = 3 + int(uniform() * 9.0);
    MatrixXd G(extra + 4, 2);
    VectorXd h(extra + 4);
    // bounding box keeps every instance bounded
    G.row(0) << 1, 0;
    G.row(1) << -1, 0;
    G.row(2) << 0, 1;
    G.row(3) << 0, -1;
    h.head(4).setConstant(10.0);
    for (int i = 0; i < extra; ++i) {
      const double th = 2.0 * 3.14159265358979 * uniform();
      G.row(4 + i) << std::cos(th), std::sin(th);
      h[4 + i] = -1.0 + 3.0 * uniform();
    }
    VectorXd c(2);
    c << 2.0 * uniform() - 1.0, 2.0 * uniform() - 1.0;

    double best = -std::numeric_limits<double>::infinity();
    const int m = static_cast<int>(G.rows());
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        Eigen::Matrix2d B;
        B << G(i, 0), G(i, 1), G(j, 0), G(j, 1);
        if (std::abs(B.determinant()) < 1e-9) continue;
        Eigen::Vector2d x = B.inverse() * Eigen::Vector2d(h[i], h[j]);
        if (((G * x - h).array() <= 1e-8).all()) best = std::max(best, c.dot(x));
      }
    }

    const LpResult res = solve_inequality_lp_max(c, G, h);
    if (best == -std::numeric_limits<double>::infinity()) {
      CHECK(res.status == LpStatus::Infeasible);
      continue;
    }
    REQUIRE(res.status == LpStatus::Optimal);
    ++optimal_count;
    CHECK(res.objective == doctest::Approx(best).epsilon(1e-7));
    CHECK(((G * res.x - h).array() <= 1e-7).all());
  }
  CHECK(optimal_count > 100);  // the generator must mostly produce feasible instances
}
