// majority: command-line front end for the majority algorithms, the bench
// harness and the lower-bound lab.
//
// Exit codes: 0 success, 1 wrong answer or rejected certificate, 2 usage error.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "majority/bench.hpp"
#include "majority/certify.hpp"
#include "majority/instance.hpp"
#include "majority/lowerbound.hpp"
#include "majority/rand_majority.hpp"

namespace {

using namespace majority;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

// "1048576", "2^20" or "1e6".
std::size_t parse_size(const std::string& text) {
  const auto caret = text.find('^');
  try {
    if (caret != std::string::npos) {
      const auto base = std::stoull(text.substr(0, caret));
      const auto exp = std::stoull(text.substr(caret + 1));
      if (exp >= 64) throw ParseError("size out of range: " + text);
      std::size_t v = 1;
      for (std::size_t i = 0; i < exp; ++i) v *= base;
      return v;
    }
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || v < 0 || v != std::floor(v)) throw ParseError("not a size: " + text);
    return static_cast<std::size_t>(v);
  } catch (const std::logic_error&) {
    throw ParseError("not a size: " + text);
  }
}

struct ParamFlags {
  std::optional<std::size_t> cutoff;
  std::optional<double> beta;
  std::optional<double> alpha;
  std::optional<double> epsilon_scale;
  std::string force_branch;

  void attach(CLI::App* app) {
    app->add_option("--cutoff", cutoff, "subproblems of at most this size use boyer-moore (default 1024)");
    app->add_option("--beta", beta, "heavy threshold (default 0.45)");
    app->add_option("--alpha", alpha, "sampling exponent (default 1/3)");
    app->add_option("--epsilon-scale", epsilon_scale, "multiplies epsilon(m) = m^-0.1");
    app->add_option("--force-branch", force_branch, "balanced|heavy|light: skip the frequency guards");
  }

  Params build() const {
    Params p;
    if (cutoff) p.cutoff = *cutoff;
    if (beta) p.beta = *beta;
    if (alpha) p.alpha = *alpha;
    if (epsilon_scale) p.epsilon_scale = *epsilon_scale;
    if (!force_branch.empty()) {
      const auto b = parse_branch(force_branch);
      if (!b || *b == Branch::Base || *b == Branch::Fallback) throw ParseError("unknown branch: " + force_branch);
      p.force_branch = b;
    }
    p.validate();
    return p;
  }
};

bench::Algorithm algorithm_of(const std::string& text) {
  const auto a = bench::parse_algorithm(text);
  if (!a) throw ParseError("unknown algorithm: " + text + " (expected boyer-moore or rand-majority)");
  return *a;
}

std::string trace_string(const RunStats& stats) {
  std::string s;
  for (const auto b : stats.branch_trace()) {
    if (!s.empty()) s += ' ';
    s += to_string(b);
  }
  return s;
}

void print_outcome(std::ostream& out, const bench::TrialOutcome& o) {
  const auto& r = o.row;
  out << "answer: " << r.answer << '\n';
  out << "comparisons: " << r.comparisons << '\n';
  out << "ratio: " << std::setprecision(6) << static_cast<double>(r.comparisons) / static_cast<double>(r.n) << '\n';
  if (r.algorithm == bench::Algorithm::RandMajority) {
    out << "branch trace: " << trace_string(o.result.stats) << '\n';
    out << "depth: " << o.result.stats.depth() << '\n';
  }
  if (r.correct) out << "ground truth: " << (*r.correct ? "match" : "MISMATCH") << '\n';
  if (r.certificate_ok) out << "certificate: " << (*r.certificate_ok ? "accepted" : "REJECTED") << '\n';
}

int write_transcript(const std::string& path, const std::string& format, std::size_t n, const Transcript& t) {
  if (format == "binary") {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    write_transcript_binary(f, n, t);
  } else {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    write_transcript_text(f, n, t);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Comparison-based majority: algorithms, audits, benchmarks and the lower-bound lab"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run one algorithm on one instance");
  std::string run_algo = "rand-majority";
  std::string run_n = "1024";
  std::string run_dist = "binary:p=0.5";
  std::uint64_t run_seed = 1;
  std::string run_instance;
  std::string run_transcript;
  std::string run_transcript_format = "text";
  bool run_no_check = false;
  ParamFlags run_params;
  run->add_option("--algo", run_algo, "boyer-moore | rand-majority");
  run->add_option("--n", run_n, "number of balls (e.g. 1000, 2^20)");
  run->add_option("--dist", run_dist, "distribution spec");
  run->add_option("--seed", run_seed, "master seed");
  run->add_option("--instance", run_instance, "read the instance from a file instead of generating it");
  run->add_option("--record-transcript", run_transcript, "write the comparison transcript to this path");
  run->add_option("--transcript-format", run_transcript_format, "text | binary")
      ->check(CLI::IsMember({"text", "binary"}));
  run->add_flag("--no-check", run_no_check, "skip the brute-force and certificate audit");
  run_params.attach(run);

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "seeded grid of trials, CSV or JSON rows");
  std::string bench_algo = "rand-majority";
  std::vector<std::string> bench_n{"2^14"};
  std::string bench_dist = "binary:p=0.5";
  std::size_t bench_trials = 10;
  std::uint64_t bench_seed = 1;
  unsigned bench_jobs = 1;
  std::string bench_out;
  std::string bench_summary_out;
  std::string bench_format = "csv";
  bool bench_paranoid = false;
  bool bench_no_check = false;
  bool bench_timing = false;
  ParamFlags bench_params;
  bench_cmd->add_option("--algo", bench_algo, "boyer-moore | rand-majority");
  bench_cmd->add_option("--n", bench_n, "sizes, comma separated")->delimiter(',');
  bench_cmd->add_option("--dist", bench_dist, "distribution spec");
  bench_cmd->add_option("--trials", bench_trials, "trials per size");
  bench_cmd->add_option("--seed", bench_seed, "master seed");
  bench_cmd->add_option("--jobs", bench_jobs, "worker threads");
  bench_cmd->add_option("--csv-out", bench_out, "write rows here instead of stdout");
  bench_cmd->add_option("--summary-out", bench_summary_out, "write the summary table here (default stderr)");
  bench_cmd->add_option("--format", bench_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  bench_cmd->add_flag("--paranoid", bench_paranoid, "check every trial, whatever n");
  bench_cmd->add_flag("--no-check", bench_no_check, "skip ground truth and certificate checks");
  bench_cmd->add_flag("--timing", bench_timing, "add a wall_ms column (output no longer reproducible)");
  bench_params.attach(bench_cmd);

  // verify
  auto* verify = app.add_subcommand("verify", "run on an instance file, audit the certificate, cross-check");
  std::string verify_instance;
  std::string verify_algo = "rand-majority";
  std::uint64_t verify_seed = 1;
  ParamFlags verify_params;
  verify->add_option("--instance", verify_instance, "instance file")->required();
  verify->add_option("--algo", verify_algo, "boyer-moore | rand-majority");
  verify->add_option("--seed", verify_seed, "seed");
  verify_params.attach(verify);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "lower-bound lab");
  bool an_constant = false;
  bool an_martingale = false;
  std::string an_n = "10000";
  std::size_t an_trials = 200;
  std::string an_strategy = "uniform";
  std::uint64_t an_seed = 1;
  unsigned an_jobs = 1;
  std::size_t an_checkpoints = 10;
  double an_tolerance = 1e-10;
  analyze->add_flag("--constant", an_constant, "print the lower-bound constant and the beta interval");
  analyze->add_flag("--martingale", an_martingale, "simulate the balance martingale, CSV out");
  analyze->add_option("--n", an_n, "balls");
  analyze->add_option("--trials", an_trials, "trials");
  analyze->add_option("--strategy", an_strategy, "uniform | smallest | largest")
      ->check(CLI::IsMember({"uniform", "smallest", "largest"}));
  analyze->add_option("--seed", an_seed, "master seed");
  analyze->add_option("--jobs", an_jobs, "worker threads");
  analyze->add_option("--checkpoints", an_checkpoints, "trajectory points");
  analyze->add_option("--tolerance", an_tolerance, "quadrature tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run) {
      const Params params = run_params.build();
      const auto algo = algorithm_of(run_algo);
      bench::TrialOutcome outcome;
      const bool keep = !run_transcript.empty();
      if (!run_instance.empty()) {
        const Instance instance = read_instance_file(run_instance);
        outcome = bench::run_on_instance(algo, instance, params, run_seed, !run_no_check, keep);
      } else {
        bench::ExperimentConfig config;
        config.algorithm = algo;
        config.dist = parse_dist_spec(run_dist);
        config.seed = run_seed;
        config.params = params;
        config.sizes = {parse_size(run_n)};
        config.validate();
        outcome = bench::run_trial(config, config.sizes.front(), 0, !run_no_check, keep);
      }
      print_outcome(std::cout, outcome);
      if (keep) write_transcript(run_transcript, run_transcript_format, outcome.row.n, outcome.transcript);
      return bench::has_violation({outcome.row}) ? kViolation : kOk;
    }

    if (*bench_cmd) {
      bench::ExperimentConfig config;
      config.algorithm = algorithm_of(bench_algo);
      for (const auto& s : bench_n) config.sizes.push_back(parse_size(s));
      config.dist = parse_dist_spec(bench_dist);
      config.trials = bench_trials;
      config.seed = bench_seed;
      config.params = bench_params.build();
      config.jobs = bench_jobs;
      config.timing = bench_timing;
      config.checks = bench_no_check ? bench::CheckPolicy::Off
                      : bench_paranoid ? bench::CheckPolicy::Paranoid
                                       : bench::CheckPolicy::Auto;
      config.validate();
      const auto rows = bench::run_grid(config);
      const auto summary = bench::summarize(rows);

      std::ofstream file;
      if (!bench_out.empty()) {
        file.open(bench_out);
        if (!file) {
          std::cerr << "error: cannot write " << bench_out << '\n';
          return kUsage;
        }
      }
      std::ostream& out = bench_out.empty() ? std::cout : file;
      if (bench_format == "json") {
        bench::write_json(out, rows, summary, config.timing);
      } else {
        bench::write_csv(out, rows, config.timing);
      }
      if (!bench_summary_out.empty()) {
        std::ofstream s(bench_summary_out);
        bench::write_summary_csv(s, summary);
      } else {
        bench::write_summary_csv(std::cerr, summary);
      }
      if (bench::has_violation(rows)) {
        std::cerr << "error: Las Vegas violation (wrong answer or rejected certificate)\n";
        return kViolation;
      }
      return kOk;
    }

    if (*verify) {
      const Params params = verify_params.build();
      const auto algo = algorithm_of(verify_algo);
      const Instance instance = read_instance_file(verify_instance);
      const auto outcome = bench::run_on_instance(algo, instance, params, verify_seed, true);
      print_outcome(std::cout, outcome);
      const bool ok = !bench::has_violation({outcome.row});
      std::cout << (ok ? "verify: PASS" : "verify: FAIL") << '\n';
      return ok ? kOk : kViolation;
    }

    if (*analyze) {
      if (an_constant == an_martingale) {
        std::cerr << "error: pass exactly one of --constant, --martingale\n";
        return kUsage;
      }
      if (an_constant) {
        const auto [b1, b2] = lab::beta_interval();
        std::cout << std::setprecision(12);
        std::cout << "lower_bound_constant," << lab::lower_bound_constant(an_tolerance) << '\n';
        std::cout << "beta1," << b1 << '\n';
        std::cout << "beta2," << b2 << '\n';
        return kOk;
      }
      const auto strategy = lab::parse_strategy(an_strategy);
      const std::size_t n = parse_size(an_n);
      if (n == 0 || an_trials == 0) throw ContractViolation("n and trials must be positive");
      lab::SimulationOptions options;
      options.jobs = an_jobs;
      options.checkpoints = an_checkpoints;
      const auto stats = lab::simulate_balance(n, *strategy, an_trials, RandomStream(an_seed), options);
      std::cout << std::setprecision(10);
      std::cout << "# majority-martingale csv v1\n";
      std::cout << "n,trials,strategy,mean_terminal,variance_terminal,mean_over_n,mean_nonverified_majority,ties\n";
      std::cout << n << ',' << an_trials << ',' << lab::to_string(*strategy) << ',' << stats.mean_terminal << ','
                << stats.variance_terminal << ',' << stats.mean_terminal / static_cast<double>(n) << ','
                << stats.mean_nonverified_majority << ',' << stats.ties << '\n';
      std::cout << "step,mean_nonzero,min_nonzero,mean_max_balance\n";
      for (const auto& p : stats.trajectory) {
        std::cout << p.step << ',' << p.mean_nonzero << ',' << p.min_nonzero << ',' << p.mean_max_balance << '\n';
      }
      return kOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ContractViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kViolation;
  }
  return kOk;
}
