#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "majority/instance.hpp"
#include "majority/rand_majority.hpp"

namespace majority::bench {

enum class Algorithm { BoyerMoore, RandMajority };

std::string_view to_string(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(std::string_view text);

// When ground truth and certificates are checked.
enum class CheckPolicy {
  Auto,      // every trial up to n = 2^20, one in ten above
  Paranoid,  // every trial
  Off,
};

inline constexpr std::size_t kFullCheckLimit = std::size_t{1} << 20;

struct ExperimentConfig {
  Algorithm algorithm = Algorithm::RandMajority;
  std::vector<std::size_t> sizes;
  DistSpec dist = dist::Binary{0.5};
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  Params params;  // cutoff override and experiment knobs live here
  unsigned jobs = 1;
  CheckPolicy checks = CheckPolicy::Auto;
  bool timing = false;  // wall time varies run to run, so it is opt-in

  void validate() const;
};

struct TrialRow {
  std::size_t n = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::RandMajority;
  std::string dist;
  std::optional<Branch> root_branch;  // rand-majority only
  std::uint64_t comparisons = 0;
  Answer answer;
  std::optional<bool> correct;         // empty when unchecked
  std::optional<bool> certificate_ok;
  std::size_t depth = 0;
  // Root-level decomposition; zero unless the root paired its input.
  std::uint64_t root_pairing = 0;
  std::size_t root_y = 0;
  std::uint64_t root_scan = 0;
  std::optional<double> wall_ms;
};

// Everything known about one run.
struct TrialOutcome {
  TrialRow row;
  RunResult result;  // certificate and level stats
  Transcript transcript;  // only when recorded
};

// Seed of trial `trial` at size n under `master`; instance and algorithm
// streams derive from it.
std::uint64_t trial_seed(std::uint64_t master, std::size_t n, std::size_t trial);

bool answers_agree(const Instance& instance, const Answer& got, const Answer& expected);

/// Generates the instance for (n, trial) and runs one algorithm on it.
/// With `check`, compares against brute force and audits the certificate
/// against the recorded transcript. `keep_transcript` returns it.
TrialOutcome run_trial(const ExperimentConfig& config, std::size_t n, std::size_t trial, bool check,
                       bool keep_transcript = false);

// Same, on an explicit instance.
TrialOutcome run_on_instance(Algorithm algorithm, const Instance& instance, const Params& params,
                             std::uint64_t seed, bool check, bool keep_transcript = false);

bool should_check(CheckPolicy policy, std::size_t n, std::size_t trial);

/// Runs every (n, trial) point. Rows come back sorted by (n, trial) and are
/// identical for any `jobs` value.
std::vector<TrialRow> run_grid(const ExperimentConfig& config);

struct SummaryRow {
  Algorithm algorithm = Algorithm::RandMajority;
  std::size_t n = 0;
  std::string dist;
  std::size_t trials = 0;
  double mean = 0.0;
  double stddev = 0.0;
  std::uint64_t min = 0;
  std::uint64_t max = 0;
  std::uint64_t p95 = 0;
  double ratio = 0.0;  // mean / n
  std::size_t checked = 0;
  double correct_rate = 1.0;
  double certificate_rate = 1.0;
  double mean_root_pairing = 0.0;
  double mean_root_y = 0.0;
  double mean_root_scan = 0.0;
};

// Throws ContractViolation on empty input.
std::vector<SummaryRow> summarize(const std::vector<TrialRow>& rows);

// True when any checked trial was wrong or had its certificate rejected.
bool has_violation(const std::vector<TrialRow>& rows);

void write_csv(std::ostream& out, const std::vector<TrialRow>& rows, bool timing);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& summary);
void write_json(std::ostream& out, const std::vector<TrialRow>& rows, const std::vector<SummaryRow>& summary,
                bool timing);

}  // namespace majority::bench
