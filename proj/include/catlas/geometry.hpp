#pragma once

#include <span>
#include <vector>

#include "catlas/constellation.hpp"

namespace catlas {

// A decision region {x : A x <= b} with unit-norm rows. Row j is the
// midpoint hyperplane against neighbor j, so offsets are exact distances
// from the frame origin to each hyperplane. Redundant rows are kept; the
// minimum offset is still the exact distance to the boundary because the
// foot of the minimal-offset hyperplane satisfies every other unit-row
// constraint.
struct HalfspaceRegion {
  int owner = -1;                         // point whose decisions this region collects
  int frame = -1;                         // point sitting at the origin of the coordinates
  std::vector<std::vector<double>> rows;  // (M-1) x n, each row unit L2 norm
  std::vector<double> offsets;            // length M-1
};

struct RegionExtents {
  double d_min = 0.0;   // distance from the owner to the nearest boundary
  double d_max = 0.0;   // farthest boundary point; +inf when unbounded
  bool bounded = false;
};

// Voronoi region of point i in its own frame (i at the origin).
HalfspaceRegion voronoi_region(const Constellation& c, int i);

// Region of point j expressed in the frame of point i (i at the origin):
// the row set of j's region with offsets shifted by the frame translation.
// Requires i != j.
HalfspaceRegion pep_region(const Constellation& c, int i, int j);

double pair_distance(const Constellation& c, int i, int j);

// d_min is min over offsets; d_max comes from exhaustive enumeration of
// n-subset vertices once a recession-cone linear program rules unbounded
// out. Regions whose recession cone admits any nonzero direction (including
// rays on the cone boundary) report d_max = +inf. Bounded regions whose
// row count makes C(M-1, n) exceed 1e7 throw a "too large" error instead of
// silently degrading.
RegionExtents extents(const HalfspaceRegion& region);

// True iff every point of the closed ball of the given radius (centered at
// the frame origin) satisfies A x <= b; exact for unit rows: radius <= d_min.
// The boundary case radius == d_min counts as contained.
bool contains_ball(const HalfspaceRegion& region, double radius);

// Membership test A x <= b (closed region).
bool region_contains(const HalfspaceRegion& region, std::span<const double> x);

}  // namespace catlas
