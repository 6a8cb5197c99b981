#include "catlas/curvature.hpp"

#include <cmath>
#include <numbers>
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

const char* axis_name(Axis axis) { return axis == Axis::snr ? "snr" : "noise"; }

CurvatureConstants curvature_constants(int n) {
  if (n < 1) throw std::invalid_argument("dimension must be >= 1");
  const double nd = static_cast<double>(n);
  CurvatureConstants k;
  k.alpha1 = nd + std::sqrt(2.0 * nd);
  k.alpha2 = nd - std::sqrt(2.0 * nd);
  k.beta1 = nd + 2.0 + std::sqrt(2.0 * (nd + 2.0));
  k.beta2 = nd + 2.0 - std::sqrt(2.0 * (nd + 2.0));
  return k;
}

double f_snr(double t, double gamma, int n) {
  const CurvatureConstants k = curvature_constants(n);
  return (t - k.alpha1 / gamma) * (t - k.alpha2 / gamma);
}

double f_noise(double t, double pn, int n) {
  const CurvatureConstants k = curvature_constants(n);
  return (t - k.beta1 * pn) * (t - k.beta2 * pn);
}

double d2_pdf_dsnr(std::span<const double> x, double gamma) {
  const int n = static_cast<int>(x.size());
  double t = 0.0;
  for (double v : x) t += v * v;
  const double sigma2 = 1.0 / gamma;
  const double log_pdf =
      -0.5 * n * std::log(2.0 * std::numbers::pi * sigma2) - 0.5 * t * gamma;
  return std::exp(log_pdf) * 0.25 * f_snr(t, gamma, n);
}

double d2_pdf_dnoise(std::span<const double> x, double pn) {
  const int n = static_cast<int>(x.size());
  double t = 0.0;
  for (double v : x) t += v * v;
  const double log_pdf = -0.5 * n * std::log(2.0 * std::numbers::pi * pn) - 0.5 * t / pn;
  return std::exp(log_pdf) * f_noise(t, pn, n) / (4.0 * pn * pn * pn * pn);
}

char sign_verdict_symbol(SignVerdict v) {
  switch (v) {
    case SignVerdict::positive:
      return '+';
    case SignVerdict::negative:
      return '-';
    case SignVerdict::indeterminate:
      return '?';
  }
  return '?';
}

SignVerdict CurvatureEstimate::verdict() const {
  if (value > 3.0 * std_err) return SignVerdict::positive;
  if (value < -3.0 * std_err) return SignVerdict::negative;
  return SignVerdict::indeterminate;
}

namespace {

void check_axis_value(double at) {
  if (!(at > 0.0) || !std::isfinite(at))
    throw std::invalid_argument("axis value must be positive and finite");
}

// Curvature weight per standard-normal squared norm z2. On the SNR axis
// the integrand over the event region is the density times
// f_snr(|x|^2; gamma)/4 with |x|^2 = z2/gamma, which collapses to a pure
// function of z2; same on the noise axis with |x|^2 = pn * z2.
struct WeightFn {
  Axis axis;
  double at;
  CurvatureConstants k;

  double operator()(double z2) const {
    if (axis == Axis::snr) return 0.25 * (z2 - k.alpha1) * (z2 - k.alpha2) / (at * at);
    return (z2 - k.beta1) * (z2 - k.beta2) / (4.0 * at * at);
  }
};

double noise_power_of(Axis axis, double at) { return axis == Axis::snr ? 1.0 / at : at; }

}  // namespace

CurvatureEstimate pep_d2_mc(const Constellation& c, int i, int j, Axis axis, double at,
                            std::uint64_t samples, std::uint64_t seed) {
  check_dim(c);
  check_point(c, i);
  check_point(c, j);
  if (i == j) throw std::invalid_argument("pairwise error needs two distinct points");
  check_samples(samples);
  check_axis_value(at);
  const FlatPoints flat(c);
  const CounterRng rng(seed, static_cast<std::uint64_t>(i));
  const WeightFn weight{axis, at, curvature_constants(c.dim)};
  const double sigma = std::sqrt(noise_power_of(axis, at));
  const int n = c.dim;
  const double* si = flat.point(i);

  const McStats stats = run_mc(samples, [&](std::uint64_t k) -> double {
    double r[kMaxDim] = {};
    double z2 = 0.0;
    for (int d = 0; d < n; ++d) {
      const double z = rng.normal(k, n, d);
      z2 += z * z;
      r[d] = si[d] + sigma * z;
    }
    if (flat.detect(r) != j) return 0.0;
    return weight(z2);
  });
  return {stats.mean, stats.std_err, stats.samples, seed, axis, at};
}

CurvatureEstimate ser_d2_mc(const Constellation& c, int i, Axis axis, double at,
                            std::uint64_t samples, std::uint64_t seed) {
  check_dim(c);
  check_point(c, i);
  check_samples(samples);
  check_axis_value(at);
  const FlatPoints flat(c);
  const CounterRng rng(seed, static_cast<std::uint64_t>(i));
  const WeightFn weight{axis, at, curvature_constants(c.dim)};
  const double sigma = std::sqrt(noise_power_of(axis, at));
  const int n = c.dim;
  const double* si = flat.point(i);

  const McStats stats = run_mc(samples, [&](std::uint64_t k) -> double {
    double r[kMaxDim] = {};
    double z2 = 0.0;
    for (int d = 0; d < n; ++d) {
      const double z = rng.normal(k, n, d);
      z2 += z * z;
      r[d] = si[d] + sigma * z;
    }
    if (flat.detect(r) == i) return 0.0;
    return weight(z2);
  });
  return {stats.mean, stats.std_err, stats.samples, seed, axis, at};
}

CurvatureEstimate ser_avg_d2_mc(const Constellation& c, Axis axis, double at,
                                std::uint64_t samples, std::uint64_t seed) {
  check_dim(c);
  check_samples(samples);
  check_axis_value(at);
  const FlatPoints flat(c);
  const CounterRng rng(seed, kStreamTransmit);
  const std::vector<double> cum = detail::prior_cumulative(c);
  const WeightFn weight{axis, at, curvature_constants(c.dim)};
  const double sigma = std::sqrt(noise_power_of(axis, at));
  const int n = c.dim;
  const std::uint64_t stride = detail::transmit_stride(n);

  const McStats stats = run_mc(samples, [&](std::uint64_t k) -> double {
    const std::uint64_t base = k * stride;
    const int sym = detail::draw_symbol(cum, rng.uniform(base));
    const double* s = flat.point(sym);
    double r[kMaxDim] = {};
    double z2 = 0.0;
    for (int d = 0; d < n; ++d) {
      const double z = rng.normal_at(base + 2 + 2 * static_cast<std::uint64_t>(d));
      z2 += z * z;
      r[d] = s[d] + sigma * z;
    }
    if (flat.detect(r) == sym) return 0.0;
    return weight(z2);
  });
  return {stats.mean, stats.std_err, stats.samples, seed, axis, at};
}

CurvatureEstimate ber_d2_mc(const Constellation& c, Axis axis, double at, std::uint64_t samples,
                            std::uint64_t seed) {
  check_dim(c);
  check_samples(samples);
  check_axis_value(at);
  const BitMapping map = hamming_matrix(c);
  const FlatPoints flat(c);
  const CounterRng rng(seed, kStreamTransmit);
  const std::vector<double> cum = detail::prior_cumulative(c);
  const WeightFn weight{axis, at, curvature_constants(c.dim)};
  const double sigma = std::sqrt(noise_power_of(axis, at));
  const int n = c.dim;
  const double inv_bits = 1.0 / static_cast<double>(map.bits_per_symbol);
  const std::uint64_t stride = detail::transmit_stride(n);

  const McStats stats = run_mc(samples, [&](std::uint64_t k) -> double {
    const std::uint64_t base = k * stride;
    const int sym = detail::draw_symbol(cum, rng.uniform(base));
    const double* s = flat.point(sym);
    double r[kMaxDim] = {};
    double z2 = 0.0;
    for (int d = 0; d < n; ++d) {
      const double z = rng.normal_at(base + 2 + 2 * static_cast<std::uint64_t>(d));
      z2 += z * z;
      r[d] = s[d] + sigma * z;
    }
    const int dec = flat.detect(r);
    const int h = map.hamming[static_cast<std::size_t>(sym)][static_cast<std::size_t>(dec)];
    if (h == 0) return 0.0;
    return static_cast<double>(h) * inv_bits * weight(z2);
  });
  return {stats.mean, stats.std_err, stats.samples, seed, axis, at};
}

CurvatureEstimate finite_diff_d2(const std::function<Estimate(double)>& metric, Axis axis,
                                 double at, double h) {
  check_axis_value(at);
  if (!(h > 0.0) || h >= at) throw std::invalid_argument("finite-difference step must lie in (0, at)");
  const Estimate lo = metric(at - h);
  const Estimate mid = metric(at);
  const Estimate hi = metric(at + h);
  CurvatureEstimate out;
  out.value = (hi.mean - 2.0 * mid.mean + lo.mean) / (h * h);
  out.std_err = std::sqrt(hi.std_err * hi.std_err + 4.0 * mid.std_err * mid.std_err +
                          lo.std_err * lo.std_err) /
                (h * h);
  out.samples = mid.samples;
  out.seed = mid.seed;
  out.axis = axis;
  out.at = at;
  return out;
}

double fd_step(double at) { return std::max(1e-3 * at, 1e-4); }

}  // namespace catlas
