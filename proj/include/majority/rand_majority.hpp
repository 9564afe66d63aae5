#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "majority/certify.hpp"
#include "majority/oracle.hpp"
#include "majority/random.hpp"

namespace majority {

enum class Branch { Base, Balanced, Heavy, Light, Fallback };

std::string_view to_string(Branch branch);
std::optional<Branch> parse_branch(std::string_view text);

/// Tuning of the randomized algorithm.
///
/// Every quantity that depends on the input size is evaluated at the size
/// of the current subproblem, not the original n.
struct Params {
  double alpha = 1.0 / 3.0;         // sample size is ceil(m^alpha)
  double epsilon_scale = 1.0;       // epsilon(m) = epsilon_scale * m^-epsilon_exponent
  double epsilon_exponent = 0.1;
  double beta = 0.45;               // heavy threshold on the top sampled frequency
  std::size_t cutoff = 1024;        // subproblems of at most this size go to boyer_moore
  std::optional<Branch> force_branch;  // experiments: bypass the frequency guards

  double epsilon(std::size_t m) const;
  std::size_t sample_size(std::size_t m) const;

  // 1 - 1/sqrt(3)
  static double beta1();
  // Root of p^3 - 19p^2 - 8p + 8 in (0, 1).
  static double beta2();

  // Throws ContractViolation unless beta1 < beta < beta2, cutoff >= 2 and
  // 0 < alpha < 1.
  void validate() const;
};

/// Color classes found in a sample, largest first (ties keep first-seen order).
struct SampleEstimate {
  std::vector<Ball> representatives;
  std::vector<std::size_t> counts;
  std::vector<double> frequencies;  // counts / sample size

  std::size_t distinct() const { return representatives.size(); }
  double q(std::size_t i) const { return i < frequencies.size() ? frequencies[i] : 0.0; }
};

// Per-recursion-level accounting. Comparison fields partition the level's
// own work; the recursive call is accounted in the next level.
struct LevelStats {
  std::size_t size = 0;
  Branch branch = Branch::Base;
  bool fell_back = false;       // heavy exhausted its pairs and ran boyer_moore
  bool set_aside_odd = false;   // odd size: one ball was resolved after the even core
  std::size_t sample_size = 0;
  std::uint64_t sample_comparisons = 0;
  std::uint64_t pairing_comparisons = 0;
  std::size_t x_size = 0;
  std::size_t y_size = 0;
  std::uint64_t scan_comparisons = 0;   // Y-scan (balanced/light) or pair scan (heavy)
  std::size_t scan_pairs = 0;
  std::uint64_t count_comparisons = 0;  // heavy's candidate count
  std::uint64_t base_comparisons = 0;   // boyer_moore at the cutoff or as fallback
  std::uint64_t odd_comparisons = 0;
  std::uint64_t total_comparisons = 0;  // including deeper levels
};

struct RunStats {
  std::uint64_t comparisons = 0;
  std::vector<LevelStats> levels;

  std::size_t depth() const { return levels.size(); }
  // One tag per level; heavy levels that fell back report Fallback.
  std::vector<Branch> branch_trace() const;
  Branch root_branch() const;
};

struct RunResult {
  Answer answer;
  Certificate certificate;
  RunStats stats;
};

/// Las Vegas majority over `balls`: the answer is exact for every random
/// outcome, only the comparison count is random.
///
/// Subproblems of size at most params.cutoff run boyer_moore. Larger odd
/// subproblems set one random ball aside, solve the even remainder and then
/// resolve the set-aside ball. Even subproblems sample ceil(m^alpha) balls,
/// estimate color frequencies and dispatch to balanced, heavy or light.
RunResult majority(CountingOracle& oracle, std::span<const Ball> balls, const Params& params,
                   RandomStream& rng);

// majority() over every ball of the oracle's instance.
RunResult rand_majority(CountingOracle& oracle, const Params& params, RandomStream& rng);

/// Classifies the sample by comparing each element against the known
/// representatives in order until a match; unmatched elements become new
/// representatives. Throws ContractViolation on an empty sample.
SampleEstimate estimate_frequencies(CountingOracle& oracle, std::span<const Ball> sample);

/// Dispatch rule on sampled frequencies q1 >= q2 >= ...:
/// balanced if q1, q2 lie in [1/2 - 4eps, 1/2 + 4eps]; heavy if q1 >= beta
/// and q1^2 >= q2^2 + ... + qk^2 + 2eps; light otherwise. q2 is 0 for a
/// single-color sample.
Branch select_branch(const SampleEstimate& estimate, double epsilon, double beta);

// Direct entry points into the three subprocedures. Recursive calls go
// through majority(). `candidate` must be one of `balls`.
RunResult balanced(CountingOracle& oracle, std::span<const Ball> balls, const Params& params, RandomStream& rng);
RunResult heavy(CountingOracle& oracle, std::span<const Ball> balls, Ball candidate, const Params& params,
                RandomStream& rng);
RunResult light(CountingOracle& oracle, std::span<const Ball> balls, const Params& params, RandomStream& rng);

}  // namespace majority
