#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "catlas/mc.hpp"
#include "catlas/rng.hpp"

using namespace catlas;

TEST_CASE("uniforms depend only on (seed, stream, index)") {
  CounterRng a(42, 7);
  CounterRng b(42, 7);
  const double out_of_order = a.uniform(5);
  (void)a.uniform(0);
  (void)a.uniform(1000);
  CHECK(a.uniform(5) == out_of_order);
  CHECK(b.uniform(5) == out_of_order);

  CounterRng other_stream(42, 8);
  CounterRng other_seed(43, 7);
  CHECK(other_stream.uniform(5) != out_of_order);
  CHECK(other_seed.uniform(5) != out_of_order);
}

TEST_CASE("uniforms stay inside the open unit interval") {
  CounterRng rng(1, 0);
  for (std::uint64_t k = 0; k < 100000; ++k) {
    const double u = rng.uniform(k);
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("normal vector coordinates have the flat pair layout") {
  CounterRng rng(9, 3);
  const int n = 5;
  CHECK(rng.normal(7, n, 2) == rng.normal_at(2 * (7 * 5 + 2)));
  // distinct (k, d) slots never alias
  CHECK(rng.normal(0, n, 4) == rng.normal_at(8));
  CHECK(rng.normal(1, n, 0) == rng.normal_at(10));
}

TEST_CASE("normal sample moments match the standard normal") {
  CounterRng rng(2024, 11);
  const std::uint64_t n = 1000000;
  double s = 0.0, s2 = 0.0;
  for (std::uint64_t k = 0; k < n; ++k) {
    const double z = rng.normal_at(2 * k);
    s += z;
    s2 += z * z;
  }
  const double mean = s / static_cast<double>(n);
  const double var = s2 / static_cast<double>(n) - mean * mean;
  CHECK(std::fabs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::fabs(var - 1.0) < 0.01);
}

TEST_CASE("run_mc reduces exactly and reports the population std err") {
  const auto stats = run_mc(1000, [](std::uint64_t k) { return k < 250 ? 1.0 : 0.0; });
  CHECK(stats.mean == 0.25);
  const double want_se = std::sqrt(0.25 * 0.75 / 1000.0);
  CHECK(stats.std_err == doctest::Approx(want_se).epsilon(1e-12));
  CHECK(stats.samples == 1000);
}

TEST_CASE("run_mc is invariant to the worker count") {
  CounterRng rng(5, 1);
  auto weight = [&](std::uint64_t k) { return rng.uniform(k) * rng.uniform(k + 1); };
  // spans several 65536-sample blocks so multiple workers actually engage
  const std::uint64_t n = 300000;

  const char* old = std::getenv(kThreadsEnvVar);
  const std::string oldv = old ? old : "";
  setenv(kThreadsEnvVar, "1", 1);
  const auto one = run_mc(n, weight);
  setenv(kThreadsEnvVar, "4", 1);
  const auto four = run_mc(n, weight);
  if (old)
    setenv(kThreadsEnvVar, oldv.c_str(), 1);
  else
    unsetenv(kThreadsEnvVar);

  CHECK(one.mean == four.mean);
  CHECK(one.std_err == four.std_err);
}

TEST_CASE("run_mc handles a partial trailing block") {
  const auto stats = run_mc(65537, [](std::uint64_t) { return 2.0; });
  CHECK(stats.mean == 2.0);
  CHECK(stats.std_err == 0.0);
}
