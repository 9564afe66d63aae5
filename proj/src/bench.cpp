#include "majority/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "majority/boyer_moore.hpp"
#include "majority/certify.hpp"

namespace majority::bench {

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::BoyerMoore: return "boyer-moore";
    case Algorithm::RandMajority: return "rand-majority";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view text) {
  if (text == "boyer-moore" || text == "bm") return Algorithm::BoyerMoore;
  if (text == "rand-majority" || text == "rand") return Algorithm::RandMajority;
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  if (trials == 0) throw ContractViolation("trials must be at least 1");
  if (sizes.empty()) throw ContractViolation("at least one n is required");
  for (const auto n : sizes) {
    if (n == 0) throw ContractViolation("n must be at least 1");
  }
  params.validate();
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t n, std::size_t trial) {
  return derive_seed(derive_seed(master, "n", n), "trial", trial);
}

bool answers_agree(const Instance& instance, const Answer& got, const Answer& expected) {
  if (got.kind != expected.kind) return false;
  if (!got.is_majority()) return true;
  return got.multiplicity == expected.multiplicity && got.witness < instance.size() &&
         instance.color(got.witness) == instance.color(expected.witness);
}

bool should_check(CheckPolicy policy, std::size_t n, std::size_t trial) {
  switch (policy) {
    case CheckPolicy::Paranoid: return true;
    case CheckPolicy::Off: return false;
    case CheckPolicy::Auto: return n <= kFullCheckLimit || trial % 10 == 0;
  }
  return true;
}

TrialOutcome run_on_instance(Algorithm algorithm, const Instance& instance, const Params& params, std::uint64_t seed,
                             bool check, bool keep_transcript) {
  TrialOutcome out;
  TrialRow& row = out.row;
  row.n = instance.size();
  row.seed = seed;
  row.algorithm = algorithm;

  CountingOracle oracle(instance, check || keep_transcript);
  RandomStream rng(seed, "algorithm");
  const auto t0 = std::chrono::steady_clock::now();
  if (algorithm == Algorithm::BoyerMoore) {
    std::vector<Ball> all(instance.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Ball>(i);
    Verdict v = boyer_moore(oracle, all);
    out.result.answer = v.answer;
    out.result.certificate = std::move(v.certificate);
    out.result.stats.comparisons = oracle.comparisons();
    row.depth = 1;
  } else {
    out.result = rand_majority(oracle, params, rng);
    const auto& stats = out.result.stats;
    row.root_branch = stats.root_branch();
    row.depth = stats.depth();
    if (!stats.levels.empty()) {
      row.root_pairing = stats.levels.front().pairing_comparisons;
      row.root_y = stats.levels.front().y_size;
      if (stats.levels.front().branch == Branch::Balanced || stats.levels.front().branch == Branch::Light) {
        row.root_scan = stats.levels.front().scan_comparisons;
      }
    }
  }
  const auto t1 = std::chrono::steady_clock::now();
  row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  row.comparisons = oracle.comparisons();
  row.answer = out.result.answer;

  if (check) {
    row.correct = answers_agree(instance, row.answer, brute_force_majority(instance));
    try {
      const EqStructure eq = build_eq_structure(instance.size(), oracle.transcript());
      row.certificate_ok = check_answer(eq, row.answer, out.result.certificate, instance.size()).accepted;
    } catch (const InconsistentTranscript&) {
      row.certificate_ok = false;
    }
  }
  if (keep_transcript) out.transcript = oracle.take_transcript();
  return out;
}

TrialOutcome run_trial(const ExperimentConfig& config, std::size_t n, std::size_t trial, bool check,
                       bool keep_transcript) {
  const std::uint64_t seed = trial_seed(config.seed, n, trial);
  RandomStream instance_rng(seed, "instance");
  const Instance instance = generate(config.dist, n, instance_rng);
  TrialOutcome out = run_on_instance(config.algorithm, instance, config.params, seed, check, keep_transcript);
  out.row.trial = trial;
  out.row.dist = majority::to_string(config.dist);
  if (!config.timing) out.row.wall_ms.reset();
  return out;
}

std::vector<TrialRow> run_grid(const ExperimentConfig& config) {
  config.validate();
  std::vector<std::size_t> sizes = config.sizes;
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  for (const auto n : sizes) {
    for (std::size_t t = 0; t < config.trials; ++t) tasks.emplace_back(n, t);
  }
  std::vector<TrialRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        const auto [n, t] = tasks[i];
        rows[i] = run_trial(config, n, t, should_check(config.checks, n, t)).row;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(config.jobs, static_cast<unsigned>(tasks.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::vector<SummaryRow> summarize(const std::vector<TrialRow>& rows) {
  if (rows.empty()) throw ContractViolation("summarize: no rows");
  std::map<std::tuple<int, std::size_t, std::string>, std::vector<const TrialRow*>> groups;
  for (const auto& r : rows) groups[{static_cast<int>(r.algorithm), r.n, r.dist}].push_back(&r);

  std::vector<SummaryRow> out;
  for (const auto& [key, group] : groups) {
    SummaryRow s;
    s.algorithm = group.front()->algorithm;
    s.n = group.front()->n;
    s.dist = group.front()->dist;
    s.trials = group.size();
    std::vector<std::uint64_t> costs;
    std::size_t correct = 0;
    std::size_t certified = 0;
    for (const auto* r : group) {
      costs.push_back(r->comparisons);
      s.mean += static_cast<double>(r->comparisons);
      s.mean_root_pairing += static_cast<double>(r->root_pairing);
      s.mean_root_y += static_cast<double>(r->root_y);
      s.mean_root_scan += static_cast<double>(r->root_scan);
      if (r->correct) {
        ++s.checked;
        correct += *r->correct ? 1 : 0;
        certified += r->certificate_ok.value_or(false) ? 1 : 0;
      }
    }
    const double count = static_cast<double>(group.size());
    s.mean /= count;
    s.mean_root_pairing /= count;
    s.mean_root_y /= count;
    s.mean_root_scan /= count;
    double sq = 0.0;
    for (const auto c : costs) sq += (static_cast<double>(c) - s.mean) * (static_cast<double>(c) - s.mean);
    s.stddev = costs.size() > 1 ? std::sqrt(sq / (count - 1.0)) : 0.0;
    std::sort(costs.begin(), costs.end());
    s.min = costs.front();
    s.max = costs.back();
    // Nearest-rank percentile.
    const auto rank = static_cast<std::size_t>(std::ceil(0.95 * count));
    s.p95 = costs[std::max<std::size_t>(rank, 1) - 1];
    s.ratio = s.mean / static_cast<double>(s.n);
    if (s.checked > 0) {
      s.correct_rate = static_cast<double>(correct) / static_cast<double>(s.checked);
      s.certificate_rate = static_cast<double>(certified) / static_cast<double>(s.checked);
    }
    out.push_back(std::move(s));
  }
  return out;
}

bool has_violation(const std::vector<TrialRow>& rows) {
  return std::any_of(rows.begin(), rows.end(), [](const TrialRow& r) {
    return (r.correct && !*r.correct) || (r.certificate_ok && !*r.certificate_ok);
  });
}

namespace {

const char* flag(const std::optional<bool>& v) {
  if (!v) return "";
  return *v ? "1" : "0";
}

std::string answer_kind(const Answer& a) { return a.is_majority() ? "majority" : "none"; }

}  // namespace

void write_csv(std::ostream& out, const std::vector<TrialRow>& rows, bool timing) {
  out << "# majority-bench csv v1\n";
  out << "n,trial,seed,algorithm,dist,root_branch,comparisons,answer,witness,multiplicity,correct,certificate,depth,"
         "root_pairing,root_y,root_scan";
  if (timing) out << ",wall_ms";
  out << '\n';
  for (const auto& r : rows) {
    out << r.n << ',' << r.trial << ',' << r.seed << ',' << to_string(r.algorithm) << ',' << r.dist << ','
        << (r.root_branch ? to_string(*r.root_branch) : std::string_view{}) << ',' << r.comparisons << ','
        << answer_kind(r.answer) << ',';
    if (r.answer.is_majority()) out << r.answer.witness << ',' << r.answer.multiplicity;
    else out << ',';
    out << ',' << flag(r.correct) << ',' << flag(r.certificate_ok) << ',' << r.depth << ',' << r.root_pairing << ','
        << r.root_y << ',' << r.root_scan;
    if (timing) out << ',' << (r.wall_ms ? std::to_string(*r.wall_ms) : std::string{});
    out << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& summary) {
  out << "# majority-bench summary v1\n";
  out << "algorithm,n,dist,trials,mean,stddev,min,max,p95,ratio,checked,correct_rate,certificate_rate,"
         "mean_root_pairing,mean_root_y,mean_root_scan\n";
  for (const auto& s : summary) {
    out << to_string(s.algorithm) << ',' << s.n << ',' << s.dist << ',' << s.trials << ',' << s.mean << ','
        << s.stddev << ',' << s.min << ',' << s.max << ',' << s.p95 << ',' << s.ratio << ',' << s.checked << ','
        << s.correct_rate << ',' << s.certificate_rate << ',' << s.mean_root_pairing << ',' << s.mean_root_y << ','
        << s.mean_root_scan << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<TrialRow>& rows, const std::vector<SummaryRow>& summary,
                bool timing) {
  using nlohmann::json;
  json doc;
  doc["format"] = "majority-bench json v1";
  json jrows = json::array();
  for (const auto& r : rows) {
    json j{{"n", r.n},
           {"trial", r.trial},
           {"seed", r.seed},
           {"algorithm", to_string(r.algorithm)},
           {"dist", r.dist},
           {"root_branch", r.root_branch ? json(to_string(*r.root_branch)) : json(nullptr)},
           {"comparisons", r.comparisons},
           {"answer", answer_kind(r.answer)},
           {"witness", r.answer.is_majority() ? json(r.answer.witness) : json(nullptr)},
           {"multiplicity", r.answer.is_majority() ? json(r.answer.multiplicity) : json(nullptr)},
           {"correct", r.correct ? json(*r.correct) : json(nullptr)},
           {"certificate", r.certificate_ok ? json(*r.certificate_ok) : json(nullptr)},
           {"depth", r.depth},
           {"root_pairing", r.root_pairing},
           {"root_y", r.root_y},
           {"root_scan", r.root_scan}};
    if (timing) j["wall_ms"] = r.wall_ms ? json(*r.wall_ms) : json(nullptr);
    jrows.push_back(std::move(j));
  }
  doc["rows"] = std::move(jrows);
  json jsum = json::array();
  for (const auto& s : summary) {
    jsum.push_back({{"algorithm", to_string(s.algorithm)},
                    {"n", s.n},
                    {"dist", s.dist},
                    {"trials", s.trials},
                    {"mean", s.mean},
                    {"stddev", s.stddev},
                    {"min", s.min},
                    {"max", s.max},
                    {"p95", s.p95},
                    {"ratio", s.ratio},
                    {"checked", s.checked},
                    {"correct_rate", s.correct_rate},
                    {"certificate_rate", s.certificate_rate},
                    {"mean_root_pairing", s.mean_root_pairing},
                    {"mean_root_y", s.mean_root_y},
                    {"mean_root_scan", s.mean_root_scan}});
  }
  doc["summary"] = std::move(jsum);
  out << doc.dump(2) << '\n';
}

}  // namespace majority::bench
