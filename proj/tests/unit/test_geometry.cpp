#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "catlas/constellation.hpp"
#include "catlas/geometry.hpp"
#include "catlas/linalg.hpp"

using namespace catlas;

TEST_CASE("square solver handles regular and singular systems") {
  const auto x = solve_square({{2.0, 0.0}, {1.0, 3.0}}, {4.0, 11.0});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK((*x)[1] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(!solve_square({{1.0, 2.0}, {2.0, 4.0}}, {1.0, 2.0}).has_value());
}

TEST_CASE("simplex solves the textbook cases") {
  {
    const auto r = lp_maximize({{1.0, 0.0}, {0.0, 1.0}}, {1.0, 2.0}, {1.0, 1.0});
    CHECK(r.status == LpStatus::optimal);
    CHECK(r.objective == doctest::Approx(3.0).epsilon(1e-12));
  }
  {
    // x <= -1 contradicts x >= 0
    const auto r = lp_maximize({{1.0}}, {-1.0}, {1.0});
    CHECK(r.status == LpStatus::infeasible);
  }
  {
    // nothing bounds x from above
    const auto r = lp_maximize({{0.0, 1.0}}, {1.0}, {1.0, 0.0});
    CHECK(r.status == LpStatus::unbounded);
  }
  {
    // degenerate tie; Bland's rule must terminate
    const auto r = lp_maximize({{1.0, 1.0}, {1.0, 1.0}}, {1.0, 1.0}, {1.0, 1.0});
    CHECK(r.status == LpStatus::optimal);
    CHECK(r.objective == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("bpsk regions are unit-offset halflines") {
  const auto c = make_bpsk();
  const auto r0 = voronoi_region(c, 0);
  REQUIRE(r0.rows.size() == 1);
  CHECK(r0.offsets[0] == doctest::Approx(1.0).epsilon(1e-15));
  const auto e = extents(r0);
  CHECK(e.d_min == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(!e.bounded);
  CHECK(std::isinf(e.d_max));
}

TEST_CASE("qam16 inner cell extents match the lattice geometry") {
  const auto c = make_qam(16);
  const auto cell = voronoi_region(c, 5);
  const auto e = extents(cell);
  CHECK(e.bounded);
  CHECK(e.d_min == 0.31622776601683789);
  CHECK(e.d_max == 0.44721359549995793);
  CHECK(contains_ball(cell, e.d_min));
  CHECK(!contains_ball(cell, e.d_min * 1.001));
  // corner cell is unbounded with the same boundary distance
  const auto corner = extents(voronoi_region(c, 0));
  CHECK(!corner.bounded);
  CHECK(corner.d_min == 0.31622776601683789);
}

TEST_CASE("pep region is the target cell seen from the transmitter") {
  const auto c = make_qam(16);
  const int i = 9, j = 5;
  CHECK(pair_distance(c, i, j) == 0.63245553203367588);
  const auto region = pep_region(c, i, j);
  CHECK(region.owner == j);
  CHECK(region.frame == i);
  // the target point itself, expressed in the transmit frame, lies inside
  std::vector<double> shift(2);
  for (int d = 0; d < 2; ++d) shift[d] = c.points[j][d] - c.points[i][d];
  CHECK(region_contains(region, shift));
  // the transmitter (origin of the frame) lies outside the target cell
  CHECK(!region_contains(region, std::vector<double>{0.0, 0.0}));
  CHECK_THROWS_AS(pep_region(c, 3, 3), std::invalid_argument);
}

TEST_CASE("grid3x3 center cell is a cube") {
  const auto c = make_grid(3, 3);
  const auto e = extents(voronoi_region(c, 13));
  CHECK(e.bounded);
  const double half = 0.5 / std::sqrt(2.0);  // half the lattice spacing after rescale
  CHECK(e.d_min == doctest::Approx(half).epsilon(1e-14));
  CHECK(e.d_max == doctest::Approx(half * std::sqrt(3.0)).epsilon(1e-14));
}

TEST_CASE("collinear slab cell is unbounded despite a zero-margin interior") {
  // middle point of three collinear points: its cell is a full-width slab,
  // so the recession test must find the sideways ray
  const auto c = normalize({{-2.0, 0.0}, {0.0, 0.0}, {2.0, 0.0}}, "slab");
  const auto e = extents(voronoi_region(c, 1));
  CHECK(!e.bounded);
  CHECK(std::isinf(e.d_max));
  CHECK(e.d_min > 0.0);
}

TEST_CASE("vertex enumeration refuses combinatorial blowups") {
  // the center cell is bounded by hundreds of rows in six dimensions
  const auto c = make_grid(3, 6);
  bool threw = false;
  try {
    static_cast<void>(extents(voronoi_region(c, 364)));
  } catch (const std::runtime_error& e) {
    threw = true;
    CHECK(std::string(e.what()).find("too large") != std::string::npos);
  }
  CHECK(threw);
}

TEST_CASE("extents are rotation invariant") {
  const auto c = make_qam(16);
  const double th = 0.5236;  // an arbitrary rotation angle
  std::vector<std::vector<double>> rot;
  for (const auto& p : c.points)
    rot.push_back({p[0] * std::cos(th) - p[1] * std::sin(th),
                   p[0] * std::sin(th) + p[1] * std::cos(th)});
  Constellation r = c;
  r.points = rot;
  const auto a = extents(voronoi_region(c, 5));
  const auto b = extents(voronoi_region(r, 5));
  CHECK(a.bounded == b.bounded);
  CHECK(a.d_min == doctest::Approx(b.d_min).epsilon(1e-12));
  CHECK(a.d_max == doctest::Approx(b.d_max).epsilon(1e-12));
}
