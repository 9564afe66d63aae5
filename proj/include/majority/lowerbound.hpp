#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "majority/random.hpp"
#include "majority/types.hpp"

// Numerical side of the lower-bound argument: the two-color adversary game
// over knowledge-graph components, the balance martingale, and the constants.
// The game reasons about exactly two colors and shares no code with certify.
namespace majority::lab {

// One knowledge-graph component: parts A and B are known to hold opposite
// colors, balls within a part share a color.
struct ComponentState {
  std::uint64_t a = 1;
  std::uint64_t b = 0;

  std::uint64_t size() const { return a + b; }
  std::uint64_t delta() const { return a > b ? a - b : b - a; }
  std::uint64_t balance() const { return delta() * delta(); }
  bool monochromatic() const { return a == 0 || b == 0; }
};

enum class MergeCase { BothMono, MonoDi, BothDi };

// Pure merge arithmetic. `x_in_b`/`y_in_b` say which part holds each compared
// ball; `equal` is the comparison outcome. The merged state is expressed
// relative to the first component's part A.
ComponentState merge_states(const ComponentState& ci, bool x_in_b, const ComponentState& cj, bool y_in_b, bool equal);

MergeCase classify(const ComponentState& ci, const ComponentState& cj);

struct MergeTally {
  std::uint64_t both_mono = 0;
  std::uint64_t both_mono_to_di = 0;  // of both_mono, merges that produced a dichromatic component
  std::uint64_t mono_di = 0;
  std::uint64_t both_di = 0;
  std::uint64_t nonverified_mono_di = 0;  // non-verified edges created in each case
  std::uint64_t nonverified_both_di = 0;
  std::uint64_t nonverified_both_mono = 0;
};

/// All n balls start as singletons. Every cross-component comparison is
/// answered by a fair coin and merges two components.
class AdversaryWorld {
 public:
  explicit AdversaryWorld(std::size_t n);

  std::size_t size() const { return parent_.size(); }
  std::size_t components() const { return components_; }
  std::size_t steps() const { return steps_; }
  std::uint64_t total_balance() const { return total_balance_; }
  std::size_t nonzero_balance() const { return nonzero_; }
  // Largest component balance; scans the live components.
  std::uint64_t max_balance() const;

  Ball find(Ball x);
  const ComponentState& state(Ball root) const { return state_[root]; }
  // True when x lies in part B of its component.
  bool in_b(Ball x);
  std::vector<Ball> roots() const;

  /// Compares two balls. Inside one component the answer is already
  /// determined and nothing changes; returns false in that case.
  bool compare(Ball x, Ball y, RandomStream& rng);

  /// Merges components with roots ri != rj, comparing a ball from part
  /// `side_i` (true = B) of the first with one from part `side_j` of the
  /// second, with the given outcome. Returns the new root.
  Ball merge(Ball ri, bool side_i, Ball rj, bool side_j, bool equal);

  const MergeTally& tally() const { return tally_; }
  std::size_t nonverified_edges() const { return nonverified_.size(); }
  // Non-verified positive edges whose endpoints carry the majority color.
  // Needs a single component; nullopt when its two parts tie.
  std::optional<std::size_t> nonverified_majority_edges();

 private:
  std::vector<Ball> parent_;
  std::vector<std::uint8_t> parity_;  // side relative to parent
  std::vector<ComponentState> state_;  // valid at roots
  std::vector<std::int64_t> rep_a_;    // some ball in part A / B, -1 if empty
  std::vector<std::int64_t> rep_b_;
  std::vector<Ball> nonverified_;      // one endpoint per non-verified edge
  std::size_t components_ = 0;
  std::size_t steps_ = 0;
  std::uint64_t total_balance_ = 0;
  std::size_t nonzero_ = 0;
  MergeTally tally_;
};

// Free-function form: compare a ball of part `side_i` in component `i` with
// one of part `side_j` in `j`, outcome drawn from `rng`. i == j is a no-op.
void merge_step(AdversaryWorld& world, Ball i, Ball j, bool side_i, bool side_j, RandomStream& rng);

enum class MergeStrategy { UniformRandom, SmallestFirst, LargestFirst };

std::string_view to_string(MergeStrategy strategy);
std::optional<MergeStrategy> parse_strategy(std::string_view text);

struct TrajectoryPoint {
  std::size_t step = 0;
  double mean_nonzero = 0.0;       // N_k averaged over trials
  double min_nonzero = 0.0;
  double mean_max_balance = 0.0;   // M_k averaged over trials
};

struct BalanceStats {
  std::size_t n = 0;
  std::size_t trials = 0;
  MergeStrategy strategy = MergeStrategy::UniformRandom;
  double mean_terminal = 0.0;
  double variance_terminal = 0.0;
  double mean_nonverified_majority = 0.0;  // over trials without a tie
  std::size_t ties = 0;
  MergeTally tally;                        // summed over trials
  std::vector<TrajectoryPoint> trajectory;
};

struct SimulationOptions {
  std::size_t checkpoints = 10;  // evenly spaced steps sampled for the trajectory
  unsigned jobs = 1;
};

/// Runs the game to a single component in each trial. Trial t draws from
/// rng.derive("balance-trial", t), so results do not depend on `jobs`.
BalanceStats simulate_balance(std::size_t n, MergeStrategy strategy, std::size_t trials, const RandomStream& rng,
                              const SimulationOptions& options = {});

double normal_cdf(double x);

// Phi(sqrt(1.5k / (n - 1.5k))); 1 once k >= 2n/3.
double predict_bound(double k, double n);

// (1/6)(1 - Phi(sqrt(1.5x / (1 - 1.5x)))), 0 at x >= 2/3.
double lower_bound_integrand(double x);

class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// 1 + integral of lower_bound_integrand over [0, 2/3] by adaptive Simpson.
/// Throws ConvergenceError if the requested tolerance is not reached.
double lower_bound_constant(double tolerance = 1e-10);

// (1 - 1/sqrt(3), root of p^3 - 19p^2 - 8p + 8 in (0, 1)); the root by
// bisection to 1e-9 (well below it, in fact).
std::pair<double, double> beta_interval();

}  // namespace majority::lab
