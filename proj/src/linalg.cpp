#include "catlas/linalg.hpp"

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace catlas {

std::optional<std::vector<double>> solve_square(std::vector<std::vector<double>> m,
                                                std::vector<double> rhs, double tol) {
  const std::size_t n = m.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
    if (std::fabs(m[piv][col]) <= tol) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    const double d = m[col][col];
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / d;
      if (f == 0.0) continue;
      for (std::size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
  return x;
}

namespace {

constexpr double kTol = 1e-9;

// Dense tableau; rows 0..m-1 are constraints with nonnegative rhs, row m is
// the minimize-form objective (stop when no reduced cost is < -kTol).
struct Tableau {
  std::vector<std::vector<double>> a;  // (m+1) x (nvars+1)
  std::vector<int> basis;              // size m
  int m = 0;
  int nvars = 0;
};

void do_pivot(Tableau& tb, int leave, int enter) {
  const double piv = tb.a[leave][enter];
  for (int j = 0; j <= tb.nvars; ++j) tb.a[leave][j] /= piv;
  tb.a[leave][enter] = 1.0;
  for (int r = 0; r <= tb.m; ++r) {
    if (r == leave) continue;
    const double f = tb.a[r][enter];
    if (f == 0.0) continue;
    for (int j = 0; j <= tb.nvars; ++j) tb.a[r][j] -= f * tb.a[leave][j];
    tb.a[r][enter] = 0.0;
  }
  tb.basis[leave] = enter;
}

// Bland's rule (lowest eligible indices) so the iteration cannot cycle.
// Columns >= col_limit are barred from entering. Returns 0 at optimum,
// 1 after a pivot, -1 when the objective is unbounded.
int bland_step(Tableau& tb, int col_limit) {
  int enter = -1;
  for (int j = 0; j < col_limit; ++j) {
    if (tb.a[tb.m][j] < -kTol) {
      enter = j;
      break;
    }
  }
  if (enter < 0) return 0;
  int leave = -1;
  double best = 0.0;
  for (int r = 0; r < tb.m; ++r) {
    const double arj = tb.a[r][enter];
    if (arj <= kTol) continue;
    const double ratio = tb.a[r][tb.nvars] / arj;
    if (leave < 0 || ratio < best - kTol ||
        (ratio < best + kTol && tb.basis[r] < tb.basis[leave])) {
      leave = r;
      best = ratio;
    }
  }
  if (leave < 0) return -1;
  do_pivot(tb, leave, enter);
  return 1;
}

}  // namespace

LpResult lp_maximize(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                     const std::vector<double>& c) {
  const int m = static_cast<int>(a.size());
  const int n = static_cast<int>(c.size());

  int nart = 0;
  for (int r = 0; r < m; ++r)
    if (b[r] < 0.0) ++nart;
  const int nreal = n + m;  // structural + slack
  const int nvars = nreal + nart;

  Tableau tb;
  tb.m = m;
  tb.nvars = nvars;
  tb.a.assign(m + 1, std::vector<double>(nvars + 1, 0.0));
  tb.basis.assign(m, -1);

  // Equality form A x + s = b; rows with negative rhs are negated and seeded
  // with an artificial basic variable.
  int art = 0;
  for (int r = 0; r < m; ++r) {
    const double sign = b[r] < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) tb.a[r][j] = sign * a[r][j];
    tb.a[r][n + r] = sign;
    tb.a[r][nvars] = sign * b[r];
    if (sign < 0.0) {
      tb.a[r][nreal + art] = 1.0;
      tb.basis[r] = nreal + art;
      ++art;
    } else {
      tb.basis[r] = n + r;
    }
  }

  if (nart > 0) {
    // Phase 1: minimize the sum of artificials, written in reduced form
    // against the artificial basics.
    for (int r = 0; r < m; ++r) {
      if (tb.basis[r] < nreal) continue;
      for (int j = 0; j <= tb.nvars; ++j) tb.a[m][j] -= tb.a[r][j];
      tb.a[m][tb.basis[r]] += 1.0;
    }
    int step;
    while ((step = bland_step(tb, nvars)) == 1) {
    }
    const double phase1 = -tb.a[m][nvars];
    if (phase1 > 1e-7) return {LpStatus::infeasible, 0.0, {}};
    // Drive leftover artificials out of the basis; an all-zero row is a
    // redundant constraint and is left parked at level zero.
    for (int r = 0; r < m; ++r) {
      if (tb.basis[r] < nreal) continue;
      int enter = -1;
      for (int j = 0; j < nreal && enter < 0; ++j)
        if (std::fabs(tb.a[r][j]) > kTol) enter = j;
      if (enter >= 0) do_pivot(tb, r, enter);
    }
  }

  // Phase 2: minimize -c x from the feasible basis; artificial columns are
  // barred from entering.
  for (int j = 0; j <= tb.nvars; ++j) tb.a[m][j] = 0.0;
  for (int j = 0; j < n; ++j) tb.a[m][j] = -c[j];
  for (int r = 0; r < m; ++r) {
    const int bv = tb.basis[r];
    if (bv >= n) continue;
    const double cost = -c[bv];
    if (cost == 0.0) continue;
    for (int j = 0; j <= tb.nvars; ++j) tb.a[m][j] -= cost * tb.a[r][j];
    tb.a[m][bv] = 0.0;
  }

  int step;
  while ((step = bland_step(tb, nreal)) == 1) {
  }
  if (step < 0) return {LpStatus::unbounded, 0.0, {}};

  std::vector<double> x(n, 0.0);
  for (int r = 0; r < m; ++r)
    if (tb.basis[r] < n) x[tb.basis[r]] = tb.a[r][tb.nvars];
  double obj = 0.0;
  for (int j = 0; j < n; ++j) obj += c[j] * x[j];
  return {LpStatus::optimal, obj, std::move(x)};
}

}  // namespace catlas
