#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>
#include <vector>

namespace dipp {

/// SplitMix64 finaliser; a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t z) noexcept;

/// Stable 64-bit hash of a short tag (FNV-1a), used to name RNG streams.
std::uint64_t tag_hash(std::string_view tag) noexcept;

/// Derives an independent stream seed from an ordered key list.
///
/// The result depends on every key and on their order, never on the thread or
/// call order that requests it. Streams in this project are always named as
/// derive_seed({master, tag_hash("..."), ids...}).
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> keys) noexcept;

/// Portable pseudo-random source.
///
/// std::mt19937_64 engine with distributions that give the same values on
/// every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();
  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);
  bool bernoulli(double p);
  /// Standard normal via the Marsaglia polar method.
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  /// k distinct values drawn uniformly from `pool` (partial Fisher-Yates); order is draw order.
  std::vector<std::size_t> sample_without_replacement(std::vector<std::size_t> pool, std::size_t k);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace dipp
