#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "majority/random.hpp"
#include "majority/types.hpp"

// Sampling primitives used by the analysis, exposed so their concentration
// can be measured directly. They work on ground-truth colors or index sets
// and never touch an oracle.
namespace majority::lab {

using IndexPair = std::pair<std::size_t, std::size_t>;

// Draws k of n items without replacement, items [0, m) forming the set X.
// Returns m'/k - m/n where m' counts draws from X.
double sampling_deviation(std::size_t n, std::size_t m, std::size_t k, RandomStream& rng);

// Uniform perfect matching of {0, ..., n-1}; one item stays unpaired when n is odd.
std::vector<IndexPair> random_pairing(std::size_t n, RandomStream& rng);

// Pairs with both members flagged in `in_x`.
std::size_t count_pairs_within(std::span<const IndexPair> pairing, std::span<const char> in_x);

// Pairs whose members share a color; the sum of u_XX over the color classes.
std::size_t count_same_color_pairs(std::span<const IndexPair> pairing, std::span<const ColorId> colors);

// Draws without replacement from n items, m of them in X, until `hits`
// draws have landed in X. Returns the number of draws.
std::size_t draws_until(std::size_t hits, std::size_t m, std::size_t n, RandomStream& rng);

// Sum of squared color frequencies of `colors`.
double sum_of_squares(std::span<const ColorId> colors);

// Sum of squared color frequencies q_i of one random sample of `sample_size` balls.
double sample_sum_of_squares(std::span<const ColorId> colors, std::size_t sample_size, RandomStream& rng);

}  // namespace majority::lab
