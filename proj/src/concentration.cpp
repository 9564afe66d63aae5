#include "majority/concentration.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace majority::lab {

double sampling_deviation(std::size_t n, std::size_t m, std::size_t k, RandomStream& rng) {
  if (m > n || k == 0 || k > n) throw ContractViolation("sampling_deviation: need m <= n and 0 < k <= n");
  std::size_t hits = 0;
  for (const auto idx : sample_without_replacement(n, k, rng)) hits += idx < m ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(k) - static_cast<double>(m) / static_cast<double>(n);
}

std::vector<IndexPair> random_pairing(std::size_t n, RandomStream& rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  shuffle(order, rng);
  std::vector<IndexPair> pairs;
  pairs.reserve(n / 2);
  for (std::size_t i = 0; i + 1 < n; i += 2) pairs.emplace_back(order[i], order[i + 1]);
  return pairs;
}

std::size_t count_pairs_within(std::span<const IndexPair> pairing, std::span<const char> in_x) {
  std::size_t count = 0;
  for (const auto& [a, b] : pairing) count += (in_x[a] && in_x[b]) ? 1 : 0;
  return count;
}

std::size_t count_same_color_pairs(std::span<const IndexPair> pairing, std::span<const ColorId> colors) {
  std::size_t count = 0;
  for (const auto& [a, b] : pairing) count += colors[a] == colors[b] ? 1 : 0;
  return count;
}

std::size_t draws_until(std::size_t hits, std::size_t m, std::size_t n, RandomStream& rng) {
  if (hits > m || m > n) throw ContractViolation("draws_until: need hits <= m <= n");
  std::size_t left_x = m;
  std::size_t left = n;
  std::size_t got = 0;
  std::size_t draws = 0;
  while (got < hits) {
    if (rng.below(left) < left_x) {
      --left_x;
      ++got;
    }
    --left;
    ++draws;
  }
  return draws;
}

double sum_of_squares(std::span<const ColorId> colors) {
  if (colors.empty()) return 0.0;
  std::unordered_map<ColorId, std::size_t> counts;
  for (const auto c : colors) ++counts[c];
  const double n = static_cast<double>(colors.size());
  double s = 0.0;
  for (const auto& [c, k] : counts) s += (static_cast<double>(k) / n) * (static_cast<double>(k) / n);
  return s;
}

double sample_sum_of_squares(std::span<const ColorId> colors, std::size_t sample_size, RandomStream& rng) {
  std::vector<ColorId> sample;
  sample.reserve(sample_size);
  for (const auto idx : sample_without_replacement(colors.size(), sample_size, rng)) sample.push_back(colors[idx]);
  return sum_of_squares(sample);
}

}  // namespace majority::lab
