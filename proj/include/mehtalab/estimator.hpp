#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "mehtalab/rng.hpp"

namespace mehtalab {

// Streaming mean/variance (Welford) with an order-dependent but deterministic
// merge, so chunked accumulation is reproducible.
struct RunningStats {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const RunningStats& other) {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double n_a = static_cast<double>(count);
    const double n_b = static_cast<double>(other.count);
    const double n = n_a + n_b;
    const double delta = other.mean - mean;
    mean += delta * n_b / n;
    m2 += other.m2 + delta * delta * n_a * n_b / n;
    count += other.count;
  }

  double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
  double std_error() const {
    return count > 1 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
  }
};

// Pairwise (tree) reduction of per-chunk statistics in chunk order.
RunningStats merge_pairwise(std::vector<RunningStats> parts);

struct McConfig {
  std::uint64_t seed = 42;
  unsigned workers = 1;
  std::size_t chunk_size = 8192;
};

// Distinct tags keep the streams of different estimators disjoint.
enum class StreamTag : std::uint64_t {
  covariance_audit = 1,
  weyl = 2,
  correlation = 3,
  correlation_pilot = 4,
  regression = 5,
  conditional = 6,
  critical_points = 7,
  mehta_mc = 8,
  abs_det = 9,
  detmoment = 10,
  kacrice = 11,
  kacrice_empirical = 12,
  kacrice_correlation = 13,
  reproduce = 14,
  cli_sample = 15,
  morse_witness = 16,
};

// Family of disjoint streams under one tag (k < 256), e.g. one per dimension.
inline StreamTag substream(StreamTag base, std::uint64_t k) {
  return static_cast<StreamTag>(static_cast<std::uint64_t>(base) | (k << 8));
}

// Splits [0, n) into fixed-size chunks. Chunk k always draws from
// Stream(seed, tag, k), so the result depends on (seed, tag, n, chunk_size)
// only, never on the number of worker threads.
template <class ChunkFn>
auto run_chunks(std::uint64_t n, const McConfig& cfg, StreamTag tag, ChunkFn&& fn)
    -> std::vector<decltype(fn(std::declval<Stream&>(), std::uint64_t{}))> {
  using Result = decltype(fn(std::declval<Stream&>(), std::uint64_t{}));
  const std::uint64_t chunk = std::max<std::uint64_t>(1, cfg.chunk_size);
  const std::uint64_t n_chunks = (n + chunk - 1) / chunk;
  std::vector<Result> results(n_chunks);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (std::uint64_t k = next++; k < n_chunks; k = next++) {
        Stream stream(cfg.seed, static_cast<std::uint64_t>(tag), k);
        const std::uint64_t count = std::min(chunk, n - k * chunk);
        results[k] = fn(stream, count);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = n_chunks;
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(cfg.workers, n_chunks ? n_chunks : 1));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

// Mean of sample(stream) over n independent draws.
template <class SampleFn>
RunningStats mc_mean(std::uint64_t n, const McConfig& cfg, StreamTag tag, SampleFn&& sample) {
  auto parts = run_chunks(n, cfg, tag, [&](Stream& s, std::uint64_t count) {
    RunningStats st;
    for (std::uint64_t i = 0; i < count; ++i) st.add(sample(s));
    return st;
  });
  return merge_pairwise(std::move(parts));
}

// Vector-valued version: sample(stream, out) fills out[0..dim).
template <class SampleFn>
std::vector<RunningStats> mc_mean_vector(std::uint64_t n, std::size_t dim, const McConfig& cfg,
                                         StreamTag tag, SampleFn&& sample) {
  auto parts = run_chunks(n, cfg, tag, [&](Stream& s, std::uint64_t count) {
    std::vector<RunningStats> st(dim);
    std::vector<double> out(dim);
    for (std::uint64_t i = 0; i < count; ++i) {
      sample(s, out);
      for (std::size_t d = 0; d < dim; ++d) st[d].add(out[d]);
    }
    return st;
  });
  std::vector<RunningStats> merged(dim);
  std::vector<RunningStats> column(parts.size());
  for (std::size_t d = 0; d < dim; ++d) {
    for (std::size_t k = 0; k < parts.size(); ++k) column[k] = parts[k][d];
    merged[d] = merge_pairwise(column);
  }
  return merged;
}

// Monte Carlo estimate with its verdict against an optional reference.
struct EstimatorResult {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  std::optional<double> reference;
  // Set when the reference is itself an estimate; enters the combined error.
  std::optional<double> reference_std_error;

  static constexpr double kZThreshold = 4.0;

  double combined_std_error() const {
    const double r = reference_std_error.value_or(0.0);
    return std::sqrt(std_error * std_error + r * r);
  }
  std::optional<double> z_score() const;
  bool pass(double threshold = kZThreshold) const;
};

EstimatorResult make_result(const RunningStats& stats, std::uint64_t seed, double scale = 1.0);

void to_json(nlohmann::json& j, const EstimatorResult& r);

}  // namespace mehtalab
