#pragma once

// Internal helpers shared by the Monte Carlo estimators. Not installed.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "catlas/constellation.hpp"

namespace catlas::detail {

// Per-sample noise buffers live on the stack with this many slots.
inline constexpr int kMaxDim = 64;

// Row-major copy of the point set; the detector loop stays in one
// contiguous buffer.
struct FlatPoints {
  std::vector<double> data;
  int m = 0;
  int n = 0;

  explicit FlatPoints(const Constellation& c) : m(c.size()), n(c.dim) {
    data.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(n));
    for (const auto& row : c.points)
      for (double v : row) data.push_back(v);
  }

  const double* point(int i) const {
    return data.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(n);
  }

  // Minimum-distance decision; ties go to the lowest index.
  int detect(const double* r) const {
    int best = 0;
    double best_d2 = 0.0;
    for (int i = 0; i < m; ++i) {
      const double* s = point(i);
      double d2 = 0.0;
      for (int d = 0; d < n; ++d) {
        const double t = r[d] - s[d];
        d2 += t * t;
      }
      if (i == 0 || d2 < best_d2) {
        best_d2 = d2;
        best = i;
      }
    }
    return best;
  }
};

inline std::vector<double> prior_cumulative(const Constellation& c) {
  std::vector<double> cum(c.priors.size(), 0.0);
  double run = 0.0;
  for (std::size_t i = 0; i < c.priors.size(); ++i) {
    run += c.priors[i];
    cum[i] = run;
  }
  cum.back() = 1.0;  // absorb rounding so every u in (0,1) lands somewhere
  return cum;
}

// First index whose cumulative prior exceeds u; cum is nondecreasing.
inline int draw_symbol(const std::vector<double>& cum, double u) {
  int lo = 0, hi = static_cast<int>(cum.size()) - 1;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (cum[static_cast<std::size_t>(mid)] > u)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

inline void check_point(const Constellation& c, int i) {
  if (i < 0 || i >= c.size()) throw std::invalid_argument("point index out of range");
}

inline void check_samples(std::uint64_t samples) {
  if (samples == 0) throw std::invalid_argument("sample count must be positive");
}

inline void check_dim(const Constellation& c) {
  if (c.dim > kMaxDim)
    throw std::invalid_argument("Monte Carlo engine supports dimension up to 64");
  if (c.dim < 1) throw std::invalid_argument("constellation dim must be >= 1");
}

// Uniform index stride per sample on the shared transmit stream: one
// uniform for the symbol draw, one reserved, then n Box-Muller pairs.
inline std::uint64_t transmit_stride(int n) { return 2ull * static_cast<std::uint64_t>(n) + 2ull; }

}  // namespace catlas::detail
