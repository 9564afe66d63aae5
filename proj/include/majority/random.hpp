#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace majority {

/// Deterministic, platform-independent random source.
///
/// A stream is identified by a master seed plus a (purpose, index) pair, so
/// per-trial streams can be derived independently of the order in which
/// trials are executed. The generator is xoshiro256** seeded through
/// splitmix64; bounded integers use rejection sampling, never the
/// implementation-defined std distributions.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed, std::string_view purpose = "default",
                        std::uint64_t index = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return next(); }
  std::uint64_t next();

  // Uniform in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [0, 1) with 53 bits of precision.
  double uniform();
  bool bernoulli(double p) { return uniform() < p; }

  // Child stream keyed on this stream's identity; does not advance *this.
  RandomStream derive(std::string_view purpose, std::uint64_t index) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t s_[4];
};

// Stable 64-bit hash of a tag (FNV-1a), used to key stream purposes.
std::uint64_t hash_tag(std::string_view tag);

// Derives the seed of stream (purpose, index) under a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::string_view purpose, std::uint64_t index);

/// In-place Fisher-Yates shuffle. Consumes no oracle comparisons.
template <typename T>
void shuffle(std::span<T> items, RandomStream& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(items[i - 1], items[j]);
  }
}

template <typename T>
void shuffle(std::vector<T>& items, RandomStream& rng) {
  shuffle(std::span<T>(items), rng);
}

/// Uniformly random k-subset of {0, ..., population-1} (Floyd's algorithm).
/// Throws ContractViolation when k > population.
std::vector<std::size_t> sample_without_replacement(std::size_t population, std::size_t k,
                                                    RandomStream& rng);

}  // namespace majority
