#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace catlas {

// Identifier for the sampling transform, recorded in output metadata so that
// any result file names the exact bit stream that produced it.
inline constexpr const char* kSamplerId = "splitmix64-counter/box-muller-cos-v1";

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

// Counter-based generator: the value at any index depends only on
// (seed, stream, index), never on call order. Estimators that must share a
// noise realization (common random numbers, per-point error decompositions)
// do so by using the same (seed, stream) and indexing scheme; parallel
// workers can evaluate disjoint index ranges with no coordination.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix64(mix64(seed + kGolden) ^ mix64(stream + 0xD1B54A32D192ED03ull))) {}

  // index-th uniform in the open interval (0, 1); never returns 0 or 1.
  double uniform(std::uint64_t index) const {
    const std::uint64_t h = mix64(key_ + (index + 1) * kGolden);
    return static_cast<double>((h >> 11) + 0.5) * 0x1p-53;
  }

  // Standard normal from the uniforms at (uindex, uindex+1), Box-Muller
  // cosine branch. u1 > 0 keeps the log finite.
  double normal_at(std::uint64_t uindex) const {
    const double u1 = uniform(uindex);
    const double u2 = uniform(uindex + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  // d-th coordinate of the k-th standard normal vector of dimension n.
  // Flat layout: every (k, d) owns the uniform pair (2(kn+d), 2(kn+d)+1).
  double normal(std::uint64_t k, int n, int d) const {
    return normal_at(2 * (k * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(d)));
  }

 private:
  std::uint64_t key_;
};

// Stream ids. Per-point estimators use the point index itself so that a SER
// draw and every PEP draw conditioned on the same transmitted point see the
// same noise realization (their per-sample indicators then partition
// exactly). The remaining streams are fixed offsets far above any point
// index.
inline constexpr std::uint64_t kStreamTransmit = 1ull << 32;
inline constexpr std::uint64_t kStreamChiSquare = (1ull << 32) + 1;
inline constexpr std::uint64_t kStreamRegionSample = (1ull << 32) + 2;
inline constexpr std::uint64_t kStreamBuilder = (1ull << 32) + 3;

}  // namespace catlas
