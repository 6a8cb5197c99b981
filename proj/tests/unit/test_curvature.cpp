#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "catlas/constellation.hpp"
#include "catlas/curvature.hpp"
#include "catlas/error_engine.hpp"

using namespace catlas;

namespace {

double phi(double u) { return std::exp(-0.5 * u * u) / std::sqrt(2.0 * std::numbers::pi); }

// closed-form curvature of the one-dimensional antipodal error rate in snr
double bpsk_d2_snr(double g) {
  const double sg = std::sqrt(g);
  return phi(sg) * (0.25 / sg + 0.25 / (g * sg));
}

// closed-form curvature of the same rate in noise power
double bpsk_d2_noise(double p) {
  return 0.25 * phi(1.0 / std::sqrt(p)) * std::pow(p, -2.5) * (1.0 / p - 3.0);
}

}  // namespace

TEST_CASE("curvature roots have their defining values") {
  const auto c3 = curvature_constants(3);
  CHECK(c3.alpha1 == 3.0 + std::sqrt(6.0));
  CHECK(c3.alpha2 == 3.0 - std::sqrt(6.0));
  CHECK(c3.beta1 == 5.0 + std::sqrt(10.0));
  CHECK(c3.beta2 == 5.0 - std::sqrt(10.0));
  // alpha2 changes sign exactly past dimension two
  CHECK(curvature_constants(1).alpha2 < 0.0);
  CHECK(curvature_constants(2).alpha2 == 0.0);
  CHECK(curvature_constants(3).alpha2 > 0.0);
  CHECK(curvature_constants(1).beta2 > 0.0);
}

TEST_CASE("radial sign factors are negative exactly between their roots") {
  const int n = 3;
  const auto cc = curvature_constants(n);
  const double g = 2.0;
  CHECK(f_snr(cc.alpha2 / g - 0.01, g, n) > 0.0);
  CHECK(f_snr(0.5 * (cc.alpha1 + cc.alpha2) / g, g, n) < 0.0);
  CHECK(f_snr(cc.alpha1 / g + 0.01, g, n) > 0.0);
  CHECK(f_snr(cc.alpha1 / g, g, n) == 0.0);
  const double p = 0.7;
  CHECK(f_noise(cc.beta2 * p - 0.01, p, n) > 0.0);
  CHECK(f_noise(0.5 * (cc.beta1 + cc.beta2) * p, p, n) < 0.0);
  CHECK(f_noise(cc.beta1 * p + 0.01, p, n) > 0.0);
}

TEST_CASE("density curvature matches the frozen reference point") {
  const std::vector<double> x = {0.5, 0.5};
  CHECK(d2_pdf_dsnr(x, 2.0) == doctest::Approx(-0.036199632236270221).epsilon(1e-14));
}

TEST_CASE("finite difference of an exact metric reproduces the closed form") {
  auto metric = [](double g) { return Estimate{q_function(std::sqrt(g)), 0.0, 1, 0}; };
  const auto fd = finite_diff_d2(metric, Axis::snr, 2.0, fd_step(2.0));
  CHECK(fd.value == doctest::Approx(bpsk_d2_snr(2.0)).epsilon(1e-4));
  CHECK(fd.std_err == 0.0);
  CHECK(fd.axis == Axis::snr);
  CHECK(fd.at == 2.0);
  CHECK_THROWS_AS(finite_diff_d2(metric, Axis::snr, 2.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(finite_diff_d2(metric, Axis::snr, 2.0, 2.5), std::invalid_argument);
}

TEST_CASE("fd step follows the relative rule with an absolute floor") {
  CHECK(fd_step(2.0) == 0.002);
  CHECK(fd_step(0.01) == 0.0001);
}

TEST_CASE("sign verdicts require three standard errors") {
  CurvatureEstimate e;
  e.value = 1.0;
  e.std_err = 0.1;
  CHECK(e.verdict() == SignVerdict::positive);
  e.value = -1.0;
  e.std_err = 0.3;
  CHECK(e.verdict() == SignVerdict::negative);
  e.value = 0.1;
  e.std_err = 0.05;
  CHECK(e.verdict() == SignVerdict::indeterminate);
  CHECK(sign_verdict_symbol(SignVerdict::positive) == '+');
  CHECK(sign_verdict_symbol(SignVerdict::negative) == '-');
  CHECK(sign_verdict_symbol(SignVerdict::indeterminate) == '?');
}

TEST_CASE("sampled snr curvature matches the closed form where the factor matters") {
  // at gamma = 3 a mistaken 1/4 vs gamma^2/4 weight would be off 2.25x
  const auto c = make_bpsk();
  const auto est = ser_avg_d2_mc(c, Axis::snr, 3.0, 1000000, 7);
  CHECK(est.verdict() == SignVerdict::positive);
  CHECK(std::fabs(est.value - bpsk_d2_snr(3.0)) <= 4.0 * est.std_err);
}

TEST_CASE("sampled noise curvature matches the closed form") {
  const auto c = make_bpsk();
  const auto est = pep_d2_mc(c, 0, 1, Axis::noise_power, 0.1, 200000, 7);
  CHECK(est.verdict() == SignVerdict::positive);
  CHECK(std::fabs(est.value - bpsk_d2_noise(0.1)) <= 4.0 * est.std_err);
  CHECK(est.at == 0.1);
  CHECK(est.axis == Axis::noise_power);
}

TEST_CASE("curvature estimates share the error-rate sample streams") {
  // same (seed, point stream): a pep curvature run and a repeat are bit-equal
  const auto c = make_qam(16);
  const auto a = pep_d2_mc(c, 9, 5, Axis::snr, 8.0, 50000, 77);
  const auto b = pep_d2_mc(c, 9, 5, Axis::snr, 8.0, 50000, 77);
  CHECK(a.value == b.value);
  CHECK(a.std_err == b.std_err);
}

TEST_CASE("axis names are stable output vocabulary") {
  CHECK(std::string(axis_name(Axis::snr)) == "snr");
  CHECK(std::string(axis_name(Axis::noise_power)) == "noise");
}
