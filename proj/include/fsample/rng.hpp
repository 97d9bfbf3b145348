#pragma once

#include <cstdint>
#include <random>

namespace fsample {

/// SplitMix64 finaliser, used to derive well-separated engine seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// A random stream identified by (master seed, index path). Streams with
/// different paths never share state; `child` derives a sub-stream so a run,
/// and a walker inside a run, each get their own sequence.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t master_seed, std::uint64_t index = 0)
      : key_(mix64(mix64(master_seed) ^ mix64(index + 0x51ed27a3ULL))), engine_(key_) {}

  RngStream child(std::uint64_t index) const { return RngStream(key_, index); }

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
  }

  double uniform01() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

  bool bernoulli(double p) { return p >= 1.0 || uniform01() < p; }

  double exponential(double rate) { return std::exponential_distribution<double>(rate)(engine_); }

 private:
  std::uint64_t key_;
  std::mt19937_64 engine_;
};

}  // namespace fsample
