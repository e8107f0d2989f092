#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <random>

namespace mehtalab {

// Counter-based Philox4x32-10 generator. The (key, counter) pair fully
// determines the output, so a substream is addressed by (seed, tag, index)
// with no sequential state shared between workers.
class Philox4x32 {
 public:
  using result_type = std::uint32_t;
  using counter_type = std::array<std::uint32_t, 4>;
  using key_type = std::array<std::uint32_t, 2>;

  Philox4x32(std::uint64_t seed, std::uint64_t stream_id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  static counter_type block(counter_type counter, key_type key);

 private:
  key_type key_{};
  counter_type counter_{};
  counter_type buffer_{};
  int buffer_pos_ = 4;
};

// A random stream: a Philox substream plus the distributions drawn from it.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index);

  double normal() { return normal_(engine_); }
  double normal(double variance);
  double uniform() { return uniform_(engine_); }
  Philox4x32& engine() { return engine_; }

 private:
  Philox4x32 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace mehtalab
