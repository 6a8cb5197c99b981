#include "catlas/error_engine.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "catlas/mc.hpp"
#include "catlas/rng.hpp"
#include "detail.hpp"

namespace catlas {

using detail::check_dim;
using detail::check_point;
using detail::check_samples;
using detail::FlatPoints;
using detail::kMaxDim;

int ml_detect(const Constellation& c, std::span<const double> r) {
  if (static_cast<int>(r.size()) != c.dim)
    throw std::invalid_argument("received vector has wrong dimension");
  FlatPoints flat(c);
  return flat.detect(r.data());
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double oracle_ser(OracleKind kind, double gamma) {
  switch (kind) {
    case OracleKind::bpsk:
      return q_function(std::sqrt(gamma));
    case OracleKind::qpsk: {
      const double q = q_function(std::sqrt(gamma / 2.0));
      return 1.0 - (1.0 - q) * (1.0 - q);
    }
  }
  throw std::invalid_argument("unknown oracle kind");
}

Estimate pep_mc(const Constellation& c, int i, int j, const ChannelParams& ch,
                std::uint64_t samples, std::uint64_t seed) {
  check_dim(c);
  check_point(c, i);
  check_point(c, j);
  if (i == j) throw std::invalid_argument("pairwise error needs two distinct points");
  check_samples(samples);
  const FlatPoints flat(c);
  const CounterRng rng(seed, static_cast<std::uint64_t>(i));
  const double sigma = std::sqrt(ch.noise_power);
  const int n = c.dim;
  const double* si = flat.point(i);

  const McStats stats = run_mc(samples, [&](std::uint64_t k) -> double {
    double r[kMaxDim] = {};
    for (int d = 0; d < n; ++d) r[d] = si[d] + sigma * rng.normal(k, n, d);
    return flat.detect(r) == j ? 1.0 : 0.0;
  });
  return {stats.mean, stats.std_err, stats.samples, seed};
}

Estimate ser_mc(const Constellation& c, int i, const ChannelParams& ch, std::uint64_t samples,
                std::uint64_t seed) {
  check_dim(c);
  check_point(c, i);
  check_samples(samples);
  const FlatPoints flat(c);
  const CounterRng rng(seed, static_cast<std::uint64_t>(i));
  const double sigma = std::sqrt(ch.noise_power);
  const int n = c.dim;
  const double* si = flat.point(i);

  const McStats stats = run_mc(samples, [&](std::uint64_t k) -> double {
    double r[kMaxDim] = {};
    for (int d = 0; d < n; ++d) r[d] = si[d] + sigma * rng.normal(k, n, d);
    return flat.detect(r) != i ? 1.0 : 0.0;
  });
  return {stats.mean, stats.std_err, stats.samples, seed};
}

Estimate ser_avg_mc(const Constellation& c, const ChannelParams& ch, std::uint64_t samples,
                    std::uint64_t seed) {
  check_dim(c);
  check_samples(samples);
  const FlatPoints flat(c);
  const CounterRng rng(seed, kStreamTransmit);
  const std::vector<double> cum = detail::prior_cumulative(c);
  const double sigma = std::sqrt(ch.noise_power);
  const int n = c.dim;
  const std::uint64_t stride = detail::transmit_stride(n);

  const McStats stats = run_mc(samples, [&](std::uint64_t k) -> double {
    const std::uint64_t base = k * stride;
    const int sym = detail::draw_symbol(cum, rng.uniform(base));
    const double* s = flat.point(sym);
    double r[kMaxDim] = {};
    for (int d = 0; d < n; ++d)
      r[d] = s[d] + sigma * rng.normal_at(base + 2 + 2 * static_cast<std::uint64_t>(d));
    return flat.detect(r) != sym ? 1.0 : 0.0;
  });
  return {stats.mean, stats.std_err, stats.samples, seed};
}

Estimate ber_mc(const Constellation& c, const ChannelParams& ch, std::uint64_t samples,
                std::uint64_t seed) {
  check_dim(c);
  check_samples(samples);
  const BitMapping map = hamming_matrix(c);
  const FlatPoints flat(c);
  const CounterRng rng(seed, kStreamTransmit);
  const std::vector<double> cum = detail::prior_cumulative(c);
  const double sigma = std::sqrt(ch.noise_power);
  const int n = c.dim;
  const double inv_bits = 1.0 / static_cast<double>(map.bits_per_symbol);
  const std::uint64_t stride = detail::transmit_stride(n);

  const McStats stats = run_mc(samples, [&](std::uint64_t k) -> double {
    const std::uint64_t base = k * stride;
    const int sym = detail::draw_symbol(cum, rng.uniform(base));
    const double* s = flat.point(sym);
    double r[kMaxDim] = {};
    for (int d = 0; d < n; ++d)
      r[d] = s[d] + sigma * rng.normal_at(base + 2 + 2 * static_cast<std::uint64_t>(d));
    const int dec = flat.detect(r);
    return static_cast<double>(
               map.hamming[static_cast<std::size_t>(sym)][static_cast<std::size_t>(dec)]) *
           inv_bits;
  });
  return {stats.mean, stats.std_err, stats.samples, seed};
}

}  // namespace catlas
