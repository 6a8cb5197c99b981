#include "catlas/geometry.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "catlas/linalg.hpp"

namespace catlas {

namespace {

constexpr double kInteriorTol = 1e-7;   // margin that certifies an interior recession ray
constexpr double kRayTol = 1e-6;        // per-axis recession-ray detection
constexpr double kFeasTol = 1e-9;       // vertex feasibility slack
constexpr double kMaxVertexWork = 1e7;  // C(M-1, n) enumeration guard

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Recession cone {d : A d <= 0} probed over the box d in [-1,1]^n through
// the shift u = d + 1. Any nonzero ray scales into the box, so the box
// restriction loses nothing.
bool has_recession_ray(const HalfspaceRegion& region) {
  const int n = static_cast<int>(region.rows[0].size());
  const int nrows = static_cast<int>(region.rows.size());

  // Fast path: maximize the margin t with a_j (u - 1) <= -t. A positive
  // optimum certifies an interior ray.
  {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    a.reserve(static_cast<std::size_t>(nrows + n + 1));
    for (int r = 0; r < nrows; ++r) {
      std::vector<double> row = region.rows[static_cast<std::size_t>(r)];
      row.push_back(1.0);
      double sum = 0.0;
      for (int k = 0; k < n; ++k) sum += region.rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)];
      a.push_back(std::move(row));
      b.push_back(sum);
    }
    for (int k = 0; k < n; ++k) {
      std::vector<double> row(static_cast<std::size_t>(n + 1), 0.0);
      row[static_cast<std::size_t>(k)] = 1.0;
      a.push_back(std::move(row));
      b.push_back(2.0);
    }
    {
      std::vector<double> row(static_cast<std::size_t>(n + 1), 0.0);
      row[static_cast<std::size_t>(n)] = 1.0;
      a.push_back(std::move(row));
      b.push_back(1.0);
    }
    std::vector<double> c(static_cast<std::size_t>(n + 1), 0.0);
    c[static_cast<std::size_t>(n)] = 1.0;
    const LpResult res = lp_maximize(a, b, c);
    if (res.status != LpStatus::optimal)
      throw std::runtime_error("recession-cone program failed to solve");
    if (res.objective > kInteriorTol) return true;
  }

  // Zero margin still allows rays on the cone boundary (e.g. a slab's
  // axis). Probe each signed axis extreme separately; together these find
  // any nonzero ray.
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  a.reserve(static_cast<std::size_t>(nrows + n));
  for (int r = 0; r < nrows; ++r) {
    a.push_back(region.rows[static_cast<std::size_t>(r)]);
    double sum = 0.0;
    for (int k = 0; k < n; ++k) sum += region.rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)];
    b.push_back(sum);
  }
  for (int k = 0; k < n; ++k) {
    std::vector<double> row(static_cast<std::size_t>(n), 0.0);
    row[static_cast<std::size_t>(k)] = 1.0;
    a.push_back(std::move(row));
    b.push_back(2.0);
  }
  for (int k = 0; k < n; ++k) {
    for (double sign : {1.0, -1.0}) {
      std::vector<double> c(static_cast<std::size_t>(n), 0.0);
      c[static_cast<std::size_t>(k)] = sign;
      const LpResult res = lp_maximize(a, b, c);
      if (res.status != LpStatus::optimal)
        throw std::runtime_error("recession-cone program failed to solve");
      // objective = sign * u_k; the ray component is sign * (u_k - 1)
      if ((res.objective - sign) > kRayTol) return true;
    }
  }
  return false;
}

double combinations(int r, int n) {
  double c = 1.0;
  for (int k = 1; k <= n; ++k) {
    c *= static_cast<double>(r - n + k) / static_cast<double>(k);
    if (c > 1e18) return c;
  }
  return c;
}

}  // namespace

HalfspaceRegion voronoi_region(const Constellation& c, int i) {
  const int m = c.size();
  if (i < 0 || i >= m) throw std::invalid_argument("point index out of range");
  HalfspaceRegion region;
  region.owner = i;
  region.frame = i;
  region.rows.reserve(static_cast<std::size_t>(m - 1));
  region.offsets.reserve(static_cast<std::size_t>(m - 1));
  for (int j = 0; j < m; ++j) {
    if (j == i) continue;
    std::vector<double> row(static_cast<std::size_t>(c.dim), 0.0);
    double d = 0.0;
    for (int k = 0; k < c.dim; ++k) {
      row[static_cast<std::size_t>(k)] = c.points[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] -
                                         c.points[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
      d += row[static_cast<std::size_t>(k)] * row[static_cast<std::size_t>(k)];
    }
    d = std::sqrt(d);
    for (double& v : row) v /= d;
    region.rows.push_back(std::move(row));
    region.offsets.push_back(d / 2.0);
  }
  return region;
}

HalfspaceRegion pep_region(const Constellation& c, int i, int j) {
  if (i == j) throw std::invalid_argument("pairwise region needs two distinct points");
  HalfspaceRegion region = voronoi_region(c, j);
  region.frame = i;
  // Shift the frame from s_j to s_i: x_new = x_old + (s_j - s_i).
  std::vector<double> shift(static_cast<std::size_t>(c.dim), 0.0);
  for (int k = 0; k < c.dim; ++k)
    shift[static_cast<std::size_t>(k)] = c.points[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] -
                                         c.points[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
  for (std::size_t r = 0; r < region.rows.size(); ++r) {
    double dot = 0.0;
    for (int k = 0; k < c.dim; ++k)
      dot += region.rows[r][static_cast<std::size_t>(k)] * shift[static_cast<std::size_t>(k)];
    region.offsets[r] += dot;
  }
  return region;
}

double pair_distance(const Constellation& c, int i, int j) {
  double d2 = 0.0;
  for (int k = 0; k < c.dim; ++k) {
    const double t = c.points[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] -
                     c.points[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
    d2 += t * t;
  }
  return std::sqrt(d2);
}

RegionExtents extents(const HalfspaceRegion& region) {
  if (region.rows.empty()) throw std::invalid_argument("region has no rows");
  const int n = static_cast<int>(region.rows[0].size());
  const int nrows = static_cast<int>(region.rows.size());

  RegionExtents out;
  out.d_min = region.offsets[0];
  for (double b : region.offsets) out.d_min = std::min(out.d_min, b);

  if (nrows < n + 1 || has_recession_ray(region)) {
    out.bounded = false;
    out.d_max = std::numeric_limits<double>::infinity();
    return out;
  }

  const double work = combinations(nrows, n);
  if (work > kMaxVertexWork)
    throw std::runtime_error("region too large: " + std::to_string(nrows) + " rows in " +
                             std::to_string(n) + " dims needs ~" + std::to_string(work) +
                             " vertex candidates (limit 1e7)");

  out.bounded = true;
  out.d_max = 0.0;
  std::vector<int> pick(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) pick[static_cast<std::size_t>(k)] = k;
  bool more = true;
  bool any_vertex = false;
  while (more) {
    std::vector<std::vector<double>> sys(static_cast<std::size_t>(n));
    std::vector<double> rhs(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      sys[static_cast<std::size_t>(k)] = region.rows[static_cast<std::size_t>(pick[static_cast<std::size_t>(k)])];
      rhs[static_cast<std::size_t>(k)] = region.offsets[static_cast<std::size_t>(pick[static_cast<std::size_t>(k)])];
    }
    if (auto v = solve_square(std::move(sys), std::move(rhs))) {
      bool feasible = true;
      for (int r = 0; r < nrows && feasible; ++r) {
        double dot = 0.0;
        for (int k = 0; k < n; ++k)
          dot += region.rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] *
                 (*v)[static_cast<std::size_t>(k)];
        feasible = dot <= region.offsets[static_cast<std::size_t>(r)] + kFeasTol;
      }
      if (feasible) {
        any_vertex = true;
        out.d_max = std::max(out.d_max, norm(*v));
      }
    }
    // next n-subset in lexicographic order
    int idx = n - 1;
    while (idx >= 0 && pick[static_cast<std::size_t>(idx)] == nrows - n + idx) --idx;
    if (idx < 0) {
      more = false;
    } else {
      ++pick[static_cast<std::size_t>(idx)];
      for (int k = idx + 1; k < n; ++k)
        pick[static_cast<std::size_t>(k)] = pick[static_cast<std::size_t>(k - 1)] + 1;
    }
  }
  if (!any_vertex) throw std::runtime_error("bounded region produced no vertices");
  return out;
}

bool contains_ball(const HalfspaceRegion& region, double radius) {
  double d_min = region.offsets.empty() ? 0.0 : region.offsets[0];
  for (double b : region.offsets) d_min = std::min(d_min, b);
  return radius <= d_min + 1e-12;
}

bool region_contains(const HalfspaceRegion& region, std::span<const double> x) {
  for (std::size_t r = 0; r < region.rows.size(); ++r) {
    double dot = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) dot += region.rows[r][k] * x[k];
    if (dot > region.offsets[r] + 1e-12) return false;
  }
  return true;
}

}  // namespace catlas
