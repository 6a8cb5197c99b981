#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <utility>
#include <vector>

namespace catlas {

// Name of the environment variable capping Monte Carlo worker threads.
// Affects speed only; results are identical for any worker count.
inline constexpr const char* kThreadsEnvVar = "CONVEXITY_ATLAS_THREADS";

// Partition identifier recorded in output metadata. Samples are split into
// fixed 65536-sample blocks whose partial sums are reduced in block order,
// which is what makes the estimate independent of the worker count.
inline constexpr const char* kPartitionId = "block65536-ordered";
inline constexpr std::uint64_t kMcBlock = 65536;

struct McStats {
  double mean = 0.0;
  double std_err = 0.0;
  std::uint64_t samples = 0;
};

inline unsigned mc_worker_count() {
  if (const char* env = std::getenv(kThreadsEnvVar)) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Runs per_sample(k) for k in [0, samples) and returns the sample mean with
// its standard error (population variance over N; for indicator weights this
// reproduces sqrt(mean(1-mean)/N) exactly). Blocks are processed
// independently and reduced in block order, so the result is bit-identical
// for any thread count.
template <typename PerSample>
McStats run_mc(std::uint64_t samples, PerSample&& per_sample) {
  const std::uint64_t blocks = (samples + kMcBlock - 1) / kMcBlock;
  std::vector<std::pair<double, double>> partial(static_cast<size_t>(blocks), {0.0, 0.0});

  auto do_block = [&](std::uint64_t b) {
    const std::uint64_t lo = b * kMcBlock;
    const std::uint64_t hi = std::min(samples, lo + kMcBlock);
    double s = 0.0, s2 = 0.0;
    for (std::uint64_t k = lo; k < hi; ++k) {
      const double w = per_sample(k);
      s += w;
      s2 += w * w;
    }
    partial[static_cast<size_t>(b)] = {s, s2};
  };

  const unsigned workers = std::min<std::uint64_t>(mc_worker_count(), blocks);
  if (workers <= 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) do_block(b);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::uint64_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) do_block(b);
      });
    }
    for (auto& th : pool) th.join();
  }

  double sum = 0.0, sumsq = 0.0;
  for (const auto& [s, s2] : partial) {
    sum += s;
    sumsq += s2;
  }
  McStats out;
  out.samples = samples;
  out.mean = sum / static_cast<double>(samples);
  double var = sumsq / static_cast<double>(samples) - out.mean * out.mean;
  if (var < 0.0) var = 0.0;
  out.std_err = std::sqrt(var / static_cast<double>(samples));
  return out;
}

}  // namespace catlas
