#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "catlas/constellation.hpp"
#include "catlas/error_engine.hpp"

namespace catlas {

enum class Axis { snr, noise_power };

const char* axis_name(Axis axis);

// Roots of the radial factor of the Gaussian density's second derivative,
// per dimension count n. alpha2 <= 0 iff n <= 2, which is what separates
// the low-dimensional convexity behavior from n > 2; beta2 > 0 for all n.
struct CurvatureConstants {
  double alpha1 = 0.0;  // n + sqrt(2n)
  double alpha2 = 0.0;  // n - sqrt(2n)
  double beta1 = 0.0;   // n + 2 + sqrt(2(n+2))
  double beta2 = 0.0;   // n + 2 - sqrt(2(n+2))
};

CurvatureConstants curvature_constants(int n);

// Radial sign factors: the second derivative of the noise density in the
// SNR (resp. noise power) is the density times f_snr/4 (resp. f_noise/(4 P^4)).
// f_snr(t) < 0 exactly on the open interval (alpha2/gamma, alpha1/gamma).
double f_snr(double t, double gamma, int n);
double f_noise(double t, double pn, int n);

// Pointwise second derivatives of the n-dimensional noise density at x,
// in the SNR and in the noise power.
double d2_pdf_dsnr(std::span<const double> x, double gamma);
double d2_pdf_dnoise(std::span<const double> x, double pn);

enum class SignVerdict { positive, negative, indeterminate };

char sign_verdict_symbol(SignVerdict v);

// A second-derivative Monte Carlo estimate at one parameter value.
struct CurvatureEstimate {
  double value = 0.0;
  double std_err = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  Axis axis = Axis::snr;
  double at = 0.0;

  // A sign claim is made only when |value| > 3 std_err.
  SignVerdict verdict() const;
};

// Second derivative of an error rate as an expectation under w the noise
// density itself: weight = event indicator times the density's second
// derivative divided by the density. The same point streams as the error
// rate estimators, so a curvature sweep at fixed seed sees one noise
// realization across the whole parameter grid.
CurvatureEstimate pep_d2_mc(const Constellation& c, int i, int j, Axis axis, double at,
                            std::uint64_t samples, std::uint64_t seed);
CurvatureEstimate ser_d2_mc(const Constellation& c, int i, Axis axis, double at,
                            std::uint64_t samples, std::uint64_t seed);
CurvatureEstimate ser_avg_d2_mc(const Constellation& c, Axis axis, double at,
                                std::uint64_t samples, std::uint64_t seed);
CurvatureEstimate ber_d2_mc(const Constellation& c, Axis axis, double at, std::uint64_t samples,
                            std::uint64_t seed);

// Central second difference (m(at+h) - 2 m(at) + m(at-h)) / h^2 of any
// estimator, with the standard errors propagated. Callers pass a metric
// that reuses one seed at all three points (common random numbers).
CurvatureEstimate finite_diff_d2(const std::function<Estimate(double)>& metric, Axis axis,
                                 double at, double h);

// Step rule for finite differences: relative 1e-3 with an absolute floor.
double fd_step(double at);

}  // namespace catlas
