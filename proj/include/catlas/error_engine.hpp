#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "catlas/constellation.hpp"

namespace catlas {

// A Monte Carlo mean with its standard error. For indicator (Bernoulli)
// estimators std_err equals sqrt(mean(1-mean)/samples) up to rounding.
struct Estimate {
  double mean = 0.0;
  double std_err = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

// Minimum-distance decision, optimal in white Gaussian noise. Ties go to
// the lowest index (a measure-zero event under the noise distribution,
// pinned for determinism).
int ml_detect(const Constellation& c, std::span<const double> r);

// Gaussian tail probability via the complementary error function;
// absolute error below 1e-12 for |x| <= 8.
double q_function(double x);

enum class OracleKind { bpsk, qpsk };

// Closed-form symbol error rates used to calibrate the estimators:
// BPSK Q(sqrt(gamma)); QPSK 1 - (1 - Q(sqrt(gamma/2)))^2 under unit
// average energy.
double oracle_ser(OracleKind kind, double gamma);

// Probability that a draw conditioned on transmitting point i decodes to
// point j. Deterministic in (seed, samples); draws live on point i's
// stream, shared with ser_mc(i) so the per-sample events partition.
Estimate pep_mc(const Constellation& c, int i, int j, const ChannelParams& ch,
                std::uint64_t samples, std::uint64_t seed);

// Probability of leaving point i's decision region (per-point SER).
Estimate ser_mc(const Constellation& c, int i, const ChannelParams& ch, std::uint64_t samples,
                std::uint64_t seed);

// Prior-weighted SER: each sample transmits a prior-drawn symbol. Shares
// its sample stream with ber_mc, so per-sample bit errors and symbol errors
// refer to the same noise realization.
Estimate ser_avg_mc(const Constellation& c, const ChannelParams& ch, std::uint64_t samples,
                    std::uint64_t seed);

// Average bit errors per transmitted bit: per-sample Hamming distance
// between the sent and decoded labels, divided by the label length.
// Requires labels.
Estimate ber_mc(const Constellation& c, const ChannelParams& ch, std::uint64_t samples,
                std::uint64_t seed);

}  // namespace catlas
