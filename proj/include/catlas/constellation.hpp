#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace catlas {

// An n-dimensional point set with priors and optional bit labels. Codewords
// of a block code under ML decoding are handled the same way: they are just
// points of an extended constellation. Immutable by convention after
// construction; every analysis consumes it read-only.
struct Constellation {
  std::string name;
  int dim = 0;
  std::vector<std::vector<double>> points;  // M rows of length dim
  std::vector<double> priors;               // length M, sums to 1
  std::vector<std::string> labels;          // empty, or M distinct equal-length bit strings

  int size() const { return static_cast<int>(points.size()); }
  bool has_labels() const { return !labels.empty(); }

  // Throws std::invalid_argument on any structural violation: M < 2,
  // ragged rows, duplicate points (closer than 1e-12 in L2), priors not a
  // probability vector (sum within 1e-12 of 1, all >= 0), malformed labels
  // (non-bit characters, unequal lengths, duplicates, or 2^L < M).
  void validate() const;

  // Average energy (1/M) sum |s_i|^2. Unit for normalized constellations.
  double average_energy() const;
};

// Pairwise Hamming distances between symbol labels plus the per-symbol bit
// count used to express bit error rates per transmitted bit.
struct BitMapping {
  std::vector<std::vector<int>> hamming;  // MxM, symmetric, zero diagonal
  int bits_per_symbol = 0;                // label length L
};

// One scalar channel state seen through both parametrizations. snr and
// noise_power always satisfy snr * noise_power = 1 within 1e-12.
struct ChannelParams {
  double noise_power = 1.0;  // sigma0^2 per dimension
  double snr = 1.0;          // gamma = 1 / sigma0^2

  static ChannelParams from_snr(double gamma);
  static ChannelParams from_noise_power(double pn);
};

// Scales the point set by the single positive factor that makes the average
// energy 1 and attaches uniform priors. Idempotent: re-normalizing returns
// the points unchanged (the scale is exactly 1 when the average energy is
// already within 1e-12 of 1).
Constellation normalize(std::vector<std::vector<double>> points, std::string name = "custom");

// Builders for the standard fixtures. All return normalized constellations.
Constellation make_bpsk();
Constellation make_mpsk(int m);                // Gray labels, m a power of two >= 2
Constellation make_qam(int m);                 // square QAM, m in {4,16,64,256}, per-axis Gray
Constellation make_grid(int side, int n);      // centered integer grid, index-order labels
Constellation make_hypercube(int n);           // (+-1/sqrt(n))^n, index-order labels
Constellation make_random_spherical(int m, int n, std::uint64_t seed);

// Dispatcher for CLI --builtin names: "bpsk", "qpsk", "mpsk8", "qam16",
// "grid3x2", "hypercube4", "sphere16x8" (optional "s<seed>" suffix).
Constellation build_standard(const std::string& name);

// h_ij = differing bits between labels i and j. Requires labels.
BitMapping hamming_matrix(const Constellation& c);

}  // namespace catlas
