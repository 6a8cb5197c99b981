#pragma once

#include <optional>
#include <vector>

namespace catlas {

// Solves the square system M x = rhs by Gaussian elimination with partial
// pivoting. Returns nullopt when a pivot falls below tol times the row
// scale (rank-deficient within tolerance). Sizes here are tiny (n <= ~8),
// so a dense textbook routine is the right tool.
std::optional<std::vector<double>> solve_square(std::vector<std::vector<double>> m,
                                                std::vector<double> rhs, double tol = 1e-12);

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  double objective = 0.0;
  std::vector<double> x;
};

// Maximizes c.x subject to A x <= b, x >= 0, via a dense two-phase simplex
// with Bland's rule (no cycling). Problem sizes are a few hundred rows at
// most, so no sparsity or revised-form machinery is warranted.
LpResult lp_maximize(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                     const std::vector<double>& c);

}  // namespace catlas
