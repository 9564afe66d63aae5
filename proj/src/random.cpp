#include "majority/random.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "majority/types.hpp"

namespace majority {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t hash_tag(std::string_view tag) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view purpose, std::uint64_t index) {
  std::uint64_t state = master;
  std::uint64_t a = splitmix64(state);
  state ^= hash_tag(purpose);
  std::uint64_t b = splitmix64(state);
  state ^= index * 0xD1B54A32D192ED03ULL;
  std::uint64_t c = splitmix64(state);
  return a ^ rotl(b, 21) ^ rotl(c, 42);
}

RandomStream::RandomStream(std::uint64_t seed, std::string_view purpose, std::uint64_t index)
    : seed_(derive_seed(seed, purpose, index)) {
  std::uint64_t state = seed_;
  for (auto& word : s_) word = splitmix64(state);
}

std::uint64_t RandomStream::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

std::uint64_t RandomStream::below(std::uint64_t bound) {
  if (bound == 0) throw ContractViolation("RandomStream::below: bound must be positive");
  // Lemire's multiply-shift with rejection of the biased low zone.
  unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double RandomStream::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

RandomStream RandomStream::derive(std::string_view purpose, std::uint64_t index) const {
  return RandomStream(seed_, purpose, index);
}

std::vector<std::size_t> sample_without_replacement(std::size_t population, std::size_t k,
                                                    RandomStream& rng) {
  if (k > population) {
    throw ContractViolation("sample_without_replacement: k=" + std::to_string(k) +
                            " exceeds population " + std::to_string(population));
  }
  std::vector<std::size_t> out;
  out.reserve(k);
  if (k == population) {
    for (std::size_t i = 0; i < population; ++i) out.push_back(i);
    return out;
  }
  std::unordered_set<std::size_t> chosen;
  chosen.reserve(k * 2);
  for (std::size_t j = population - k; j < population; ++j) {
    const auto t = static_cast<std::size_t>(rng.below(j + 1));
    if (chosen.insert(t).second) {
      out.push_back(t);
    } else {
      chosen.insert(j);
      out.push_back(j);
    }
  }
  return out;
}

}  // namespace majority
