#include "majority/rand_majority.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "majority/boyer_moore.hpp"
#include "majority/lowerbound.hpp"

namespace majority {

std::string_view to_string(Branch branch) {
  switch (branch) {
    case Branch::Base: return "base";
    case Branch::Balanced: return "balanced";
    case Branch::Heavy: return "heavy";
    case Branch::Light: return "light";
    case Branch::Fallback: return "fallback";
  }
  return "unknown";
}

std::optional<Branch> parse_branch(std::string_view text) {
  for (const auto b : {Branch::Base, Branch::Balanced, Branch::Heavy, Branch::Light, Branch::Fallback}) {
    if (to_string(b) == text) return b;
  }
  return std::nullopt;
}

double Params::epsilon(std::size_t m) const {
  return epsilon_scale * std::pow(static_cast<double>(m), -epsilon_exponent);
}

std::size_t Params::sample_size(std::size_t m) const {
  const auto k = static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(m), alpha) - 1e-9));
  return std::clamp<std::size_t>(k, 1, m);
}

double Params::beta1() { return lab::beta_interval().first; }
double Params::beta2() { return lab::beta_interval().second; }

void Params::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ContractViolation("Params: alpha must lie in (0, 1)");
  if (!(beta > beta1() && beta < beta2())) {
    throw ContractViolation("Params: beta must lie in (beta1, beta2) = (" + std::to_string(beta1()) + ", " +
                            std::to_string(beta2()) + ")");
  }
  if (cutoff < 2) throw ContractViolation("Params: cutoff must be at least 2");
  if (!(epsilon_scale > 0.0)) throw ContractViolation("Params: epsilon_scale must be positive");
}

std::vector<Branch> RunStats::branch_trace() const {
  std::vector<Branch> trace;
  trace.reserve(levels.size());
  for (const auto& level : levels) trace.push_back(level.fell_back ? Branch::Fallback : level.branch);
  return trace;
}

Branch RunStats::root_branch() const {
  if (levels.empty()) return Branch::Base;
  return levels.front().fell_back ? Branch::Fallback : levels.front().branch;
}

SampleEstimate estimate_frequencies(CountingOracle& oracle, std::span<const Ball> sample) {
  if (sample.empty()) throw ContractViolation("estimate_frequencies: empty sample");
  std::vector<Ball> reps;
  std::vector<std::size_t> counts;
  for (const auto x : sample) {
    bool matched = false;
    for (std::size_t r = 0; r < reps.size(); ++r) {
      if (oracle.cmp(reps[r], x)) {
        ++counts[r];
        matched = true;
        break;
      }
    }
    if (!matched) {
      reps.push_back(x);
      counts.push_back(1);
    }
  }
  std::vector<std::size_t> order(reps.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return counts[a] > counts[b]; });
  SampleEstimate est;
  for (const auto i : order) {
    est.representatives.push_back(reps[i]);
    est.counts.push_back(counts[i]);
    est.frequencies.push_back(static_cast<double>(counts[i]) / static_cast<double>(sample.size()));
  }
  return est;
}

Branch select_branch(const SampleEstimate& estimate, double epsilon, double beta) {
  const double q1 = estimate.q(0);
  const double q2 = estimate.q(1);
  const double lo = 0.5 - 4.0 * epsilon;
  const double hi = 0.5 + 4.0 * epsilon;
  if (q1 >= lo && q1 <= hi && q2 >= lo && q2 <= hi) return Branch::Balanced;
  double rest = 0.0;
  for (std::size_t i = 1; i < estimate.frequencies.size(); ++i) rest += estimate.frequencies[i] * estimate.frequencies[i];
  if (q1 >= beta && q1 * q1 >= rest + 2.0 * epsilon) return Branch::Heavy;
  return Branch::Light;
}

namespace {

// A verdict plus, for majority answers, one flag per input position marking
// the balls proven to share the witness's color.
struct Solved {
  Verdict verdict;
  std::vector<char> in_class;
};

struct Pairing {
  std::vector<Ball> x;            // survivor of each equal pair
  std::vector<Ball> x_partner;    // the other ball of that pair
  std::vector<std::size_t> x_pos;  // input positions of x and x_partner
  std::vector<std::size_t> x_partner_pos;
  std::vector<BallPair> y;        // unequal pairs
  std::vector<std::pair<std::size_t, std::size_t>> y_pos;
};

class Solver {
 public:
  Solver(CountingOracle& oracle, const Params& params, RandomStream& rng)
      : oracle_(oracle), params_(params), rng_(rng) {}

  Solved solve(std::span<const Ball> balls) {
    if (balls.empty()) throw ContractViolation("majority: empty input");
    const std::size_t level = open_level(balls.size());
    const auto start = oracle_.comparisons();
    Solved out;
    if (balls.size() <= params_.cutoff) {
      out = base(level, balls);
    } else {
      out = with_even_core(level, balls, std::nullopt,
                           [&](std::span<const Ball> even) { return dispatch(level, even); });
    }
    stats.levels[level].total_comparisons = oracle_.comparisons() - start;
    return out;
  }

  Solved entry(Branch branch, std::span<const Ball> balls, std::optional<Ball> candidate) {
    if (balls.empty()) throw ContractViolation("majority: empty input");
    const std::size_t level = open_level(balls.size());
    stats.levels[level].branch = branch;
    const auto start = oracle_.comparisons();
    Solved out;
    if (balls.size() == 1) {
      out = base(level, balls);
      stats.levels[level].branch = branch;
    } else {
      out = with_even_core(level, balls, candidate, [&](std::span<const Ball> even) {
        return run_branch(level, branch, even, candidate.value_or(even.front()));
      });
    }
    stats.levels[level].total_comparisons = oracle_.comparisons() - start;
    return out;
  }

  RunStats stats;

 private:
  std::size_t open_level(std::size_t m) {
    stats.levels.emplace_back();
    stats.levels.back().size = m;
    return stats.levels.size() - 1;
  }

  Solved base(std::size_t level, std::span<const Ball> balls) {
    stats.levels[level].branch = Branch::Base;
    const auto start = oracle_.comparisons();
    Solved out;
    out.verdict = boyer_moore(oracle_, balls, &out.in_class);
    stats.levels[level].base_comparisons += oracle_.comparisons() - start;
    return out;
  }

  // Runs `core` on an even number of balls. For odd input one random ball
  // (never `keep`) is set aside and resolved against the core's verdict.
  template <typename Core>
  Solved with_even_core(std::size_t level, std::span<const Ball> balls, std::optional<Ball> keep, Core&& core) {
    const std::size_t m = balls.size();
    if (m % 2 == 0) return core(balls);

    std::size_t keep_pos = m;
    if (keep) {
      const auto it = std::find(balls.begin(), balls.end(), *keep);
      keep_pos = static_cast<std::size_t>(it - balls.begin());
    }
    std::size_t s_pos = static_cast<std::size_t>(rng_.below(keep_pos < m ? m - 1 : m));
    if (keep_pos < m && s_pos >= keep_pos) ++s_pos;

    std::vector<Ball> rest;
    rest.reserve(m - 1);
    for (std::size_t i = 0; i < m; ++i) {
      if (i != s_pos) rest.push_back(balls[i]);
    }
    stats.levels[level].set_aside_odd = true;
    Solved inner = core(rest);
    return resolve_odd(level, balls, s_pos, std::move(inner));
  }

  Solved resolve_odd(std::size_t level, std::span<const Ball> balls, std::size_t s_pos, Solved inner) {
    const auto start = oracle_.comparisons();
    const Ball s = balls[s_pos];
    const std::size_t m = balls.size();
    Solved out;
    // Positions in `balls` of the even remainder's positions.
    auto full_pos = [s_pos](std::size_t i) { return i < s_pos ? i : i + 1; };

    if (inner.verdict.answer.is_majority()) {
      Answer answer = inner.verdict.answer;
      out.in_class.assign(m, 0);
      for (std::size_t i = 0; i < inner.in_class.size(); ++i) out.in_class[full_pos(i)] = inner.in_class[i];
      if (oracle_.cmp(answer.witness, s)) {
        ++answer.multiplicity;
        out.in_class[s_pos] = 1;
      }
      out.verdict = {answer, Certificate{answer.witness, {}, {}}};
    } else {
      // The remainder is covered by disjoint unequal pairs. The set-aside ball
      // closes a rainbow triangle with any pair it differs from entirely; if
      // it matches a ball of every pair, its color holds (m + 1) / 2 balls.
      auto pairs = std::move(inner.verdict.certificate.pairs);
      if (inner.verdict.certificate.triangle) {
        throw std::logic_error("resolve_odd: cover of an even remainder holds a triangle");
      }
      shuffle(pairs, rng_);
      std::vector<Ball> hits{s};
      bool found = false;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto [a, b] = pairs[i];
        if (oracle_.cmp(s, a)) {
          hits.push_back(a);
        } else if (oracle_.cmp(s, b)) {
          hits.push_back(b);
        } else {
          Certificate cert;
          cert.triangle = Triangle{s, a, b};
          pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(i));
          cert.pairs = std::move(pairs);
          out.verdict = {Answer::none(), std::move(cert)};
          found = true;
          break;
        }
      }
      if (!found) {
        std::unordered_map<Ball, std::size_t> position;
        position.reserve(m);
        for (std::size_t i = 0; i < m; ++i) position.emplace(balls[i], i);
        out.in_class.assign(m, 0);
        for (const auto h : hits) out.in_class[position.at(h)] = 1;
        out.verdict = {Answer::majority(s, hits.size()), Certificate{s, {}, {}}};
      }
    }
    stats.levels[level].odd_comparisons += oracle_.comparisons() - start;
    return out;
  }

  Solved dispatch(std::size_t level, std::span<const Ball> balls) {
    const std::size_t m = balls.size();
    const auto start = oracle_.comparisons();
    const std::size_t k = params_.sample_size(m);
    const auto picks = sample_without_replacement(m, k, rng_);
    std::vector<Ball> sample;
    sample.reserve(k);
    for (const auto p : picks) sample.push_back(balls[p]);
    const SampleEstimate est = estimate_frequencies(oracle_, sample);
    auto& st = stats.levels[level];
    st.sample_size = k;
    st.sample_comparisons = oracle_.comparisons() - start;
    const Branch branch =
        params_.force_branch.value_or(select_branch(est, params_.epsilon(m), params_.beta));
    return run_branch(level, branch, balls, est.representatives.front());
  }

  Solved run_branch(std::size_t level, Branch branch, std::span<const Ball> balls, Ball candidate) {
    stats.levels[level].branch = branch;
    switch (branch) {
      case Branch::Balanced: return balanced_even(level, balls);
      case Branch::Heavy: return heavy_even(level, balls, candidate);
      case Branch::Light: return light_even(level, balls);
      case Branch::Base:
      case Branch::Fallback: return base(level, balls);
    }
    throw std::logic_error("run_branch: unknown branch");
  }

  Pairing pair_up(std::size_t level, std::span<const Ball> balls) {
    const auto start = oracle_.comparisons();
    std::vector<std::size_t> order(balls.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    shuffle(order, rng_);
    Pairing p;
    p.x.reserve(balls.size() / 2);
    p.y.reserve(balls.size() / 2);
    for (std::size_t i = 0; i + 1 < order.size(); i += 2) {
      const std::size_t first = order[i];
      const std::size_t second = order[i + 1];
      if (oracle_.cmp(balls[first], balls[second])) {
        p.x.push_back(balls[second]);
        p.x_pos.push_back(second);
        p.x_partner.push_back(balls[first]);
        p.x_partner_pos.push_back(first);
      } else {
        p.y.emplace_back(balls[first], balls[second]);
        p.y_pos.emplace_back(first, second);
      }
    }
    auto& st = stats.levels[level];
    st.pairing_comparisons = oracle_.comparisons() - start;
    st.x_size = p.x.size();
    st.y_size = 2 * p.y.size();
    return p;
  }

  // No majority in X implies none in the full set: lift X's cover and add Y.
  static Verdict lift_no_majority(const Pairing& p, const Certificate& reduced) {
    std::unordered_map<Ball, Ball> partner;
    partner.reserve(p.x.size());
    for (std::size_t i = 0; i < p.x.size(); ++i) partner.emplace(p.x[i], p.x_partner[i]);
    Certificate cert;
    cover::lift_into(reduced, [&](Ball b) { return partner.at(b); }, cert.pairs);
    cert.pairs.insert(cert.pairs.end(), p.y.begin(), p.y.end());
    return {Answer::none(), std::move(cert)};
  }

  // Splits the X region by the recursion's class flags.
  static void split_x_region(const Pairing& p, const std::vector<char>& x_class, std::vector<Ball>& candidate_balls,
                             std::vector<Ball>& singles, std::vector<char>& in_class) {
    for (std::size_t i = 0; i < p.x.size(); ++i) {
      if (x_class[i]) {
        candidate_balls.push_back(p.x[i]);
        candidate_balls.push_back(p.x_partner[i]);
        in_class[p.x_pos[i]] = 1;
        in_class[p.x_partner_pos[i]] = 1;
      } else {
        singles.push_back(p.x[i]);
        singles.push_back(p.x_partner[i]);
      }
    }
  }

  Solved balanced_even(std::size_t level, std::span<const Ball> balls) {
    const std::size_t m = balls.size();
    Pairing p = pair_up(level, balls);
    Solved out;
    if (p.x.empty()) {
      out.verdict = {Answer::none(), Certificate{std::nullopt, p.y, std::nullopt}};
      return out;
    }
    Solved sub = solve(p.x);
    if (!sub.verdict.answer.is_majority()) {
      out.verdict = lift_no_majority(p, sub.verdict.certificate);
      return out;
    }
    const Ball v = sub.verdict.answer.witness;
    std::vector<Ball> candidate_balls;
    std::vector<Ball> singles;
    out.in_class.assign(m, 0);
    split_x_region(p, sub.in_class, candidate_balls, singles, out.in_class);
    std::size_t cnt = 2 * sub.verdict.answer.multiplicity;

    const auto start = oracle_.comparisons();
    std::vector<BallPair> with_v;
    std::vector<BallPair> without_v;
    for (std::size_t i = 0; i < p.y.size(); ++i) {
      const auto [a, b] = p.y[i];
      if (oracle_.cmp(v, a)) {
        out.in_class[p.y_pos[i].first] = 1;
        candidate_balls.push_back(a);  // b differs from a, hence from v
        ++cnt;
        with_v.push_back(p.y[i]);
      } else if (oracle_.cmp(v, b)) {
        out.in_class[p.y_pos[i].second] = 1;
        candidate_balls.push_back(b);
        ++cnt;
        with_v.push_back(p.y[i]);
      } else {
        without_v.push_back(p.y[i]);
      }
    }
    auto& st = stats.levels[level];
    st.scan_comparisons = oracle_.comparisons() - start;
    st.scan_pairs = p.y.size();

    if (cnt > m / 2) {
      out.verdict = {Answer::majority(v, cnt), Certificate{v, {}, {}}};
      return out;
    }
    // Y-hits are already inside their fixed pairs; only the X region's
    // candidate balls still need partners.
    candidate_balls.resize(candidate_balls.size() - with_v.size());
    out.verdict = {Answer::none(), cover::with_candidate(v, candidate_balls, singles, without_v, std::move(with_v))};
    out.in_class.clear();
    return out;
  }

  Solved light_even(std::size_t level, std::span<const Ball> balls) {
    const std::size_t m = balls.size();
    Pairing p = pair_up(level, balls);
    Solved out;
    if (p.x.empty()) {
      out.verdict = {Answer::none(), Certificate{std::nullopt, p.y, std::nullopt}};
      return out;
    }
    Solved sub = solve(p.x);
    if (!sub.verdict.answer.is_majority()) {
      out.verdict = lift_no_majority(p, sub.verdict.certificate);
      return out;
    }
    const Ball v = sub.verdict.answer.witness;
    std::vector<Ball> candidate_balls;
    std::vector<Ball> singles;
    out.in_class.assign(m, 0);
    split_x_region(p, sub.in_class, candidate_balls, singles, out.in_class);
    // Surplus of v over the other colors in X.
    auto cnt = static_cast<std::int64_t>(2 * sub.verdict.answer.multiplicity) - static_cast<std::int64_t>(p.x.size());

    const auto start = oracle_.comparisons();
    std::vector<BallPair> without_v;
    std::vector<char> both_differ(p.y.size(), 0);
    std::size_t hits = 0;
    std::size_t scanned = 0;
    bool refuted = false;
    for (std::size_t i = 0; i < p.y.size() && !refuted; ++i) {
      const auto [a, b] = p.y[i];
      ++scanned;
      if (oracle_.cmp(v, a)) {
        out.in_class[p.y_pos[i].first] = 1;
        ++hits;
      } else if (oracle_.cmp(v, b)) {
        out.in_class[p.y_pos[i].second] = 1;
        ++hits;
      } else {
        both_differ[i] = 1;
        without_v.push_back(p.y[i]);
        if (--cnt == 0) refuted = true;
      }
    }
    auto& st = stats.levels[level];
    st.scan_comparisons = oracle_.comparisons() - start;
    st.scan_pairs = scanned;

    if (refuted) {
      std::vector<BallPair> fixed;
      for (std::size_t i = 0; i < p.y.size(); ++i) {
        if (!both_differ[i]) fixed.push_back(p.y[i]);
      }
      out.verdict = {Answer::none(), cover::with_candidate(v, candidate_balls, singles, without_v, std::move(fixed))};
      out.in_class.clear();
      return out;
    }
    const std::size_t multiplicity = m / 2 + static_cast<std::size_t>(cnt);
    if (multiplicity != candidate_balls.size() + hits) {
      throw std::logic_error("light: multiplicity formula disagrees with the resolved class");
    }
    out.verdict = {Answer::majority(v, multiplicity), Certificate{v, {}, {}}};
    return out;
  }

  Solved heavy_even(std::size_t level, std::span<const Ball> balls, Ball v) {
    const std::size_t m = balls.size();
    auto start = oracle_.comparisons();
    Solved out;
    out.in_class.assign(m, 0);
    std::vector<Ball> members;
    std::vector<Ball> others;
    bool seen_v = false;
    for (std::size_t i = 0; i < m; ++i) {
      if (balls[i] == v && !seen_v) {
        seen_v = true;
        out.in_class[i] = 1;
        members.push_back(v);
        continue;
      }
      if (oracle_.cmp(v, balls[i])) {
        out.in_class[i] = 1;
        members.push_back(balls[i]);
      } else {
        others.push_back(balls[i]);
      }
    }
    if (!seen_v) throw ContractViolation("heavy: candidate is not among the balls");
    stats.levels[level].count_comparisons = oracle_.comparisons() - start;
    const std::size_t cnt = members.size();
    if (cnt > m / 2) {
      out.verdict = {Answer::majority(v, cnt), Certificate{v, {}, {}}};
      return out;
    }
    out.in_class.clear();

    // Need m/2 - cnt unequal pairs among the other colors.
    std::size_t k = m / 2 - cnt;
    start = oracle_.comparisons();
    shuffle(others, rng_);
    std::vector<BallPair> found;
    std::vector<Ball> singles;
    std::size_t i = 0;
    for (; k > 0 && i + 1 < others.size(); i += 2) {
      ++stats.levels[level].scan_pairs;
      if (!oracle_.cmp(others[i], others[i + 1])) {
        found.emplace_back(others[i], others[i + 1]);
        --k;
      } else {
        singles.push_back(others[i]);
        singles.push_back(others[i + 1]);
      }
    }
    stats.levels[level].scan_comparisons = oracle_.comparisons() - start;
    if (k == 0) {
      singles.insert(singles.end(), others.begin() + static_cast<std::ptrdiff_t>(i), others.end());
      out.verdict = {Answer::none(), cover::with_candidate(v, members, singles, found, {})};
      return out;
    }

    stats.levels[level].fell_back = true;
    start = oracle_.comparisons();
    out.verdict = boyer_moore(oracle_, balls, &out.in_class);
    stats.levels[level].base_comparisons = oracle_.comparisons() - start;
    return out;
  }

  CountingOracle& oracle_;
  const Params& params_;
  RandomStream& rng_;
};

RunResult finish(Solver& solver, Solved solved, std::uint64_t start, const CountingOracle& oracle) {
  RunResult result;
  result.answer = solved.verdict.answer;
  result.certificate = std::move(solved.verdict.certificate);
  result.stats = std::move(solver.stats);
  result.stats.comparisons = oracle.comparisons() - start;
  return result;
}

}  // namespace

RunResult majority(CountingOracle& oracle, std::span<const Ball> balls, const Params& params, RandomStream& rng) {
  params.validate();
  const auto start = oracle.comparisons();
  Solver solver(oracle, params, rng);
  Solved solved = solver.solve(balls);
  return finish(solver, std::move(solved), start, oracle);
}

RunResult rand_majority(CountingOracle& oracle, const Params& params, RandomStream& rng) {
  std::vector<Ball> all(oracle.size());
  std::iota(all.begin(), all.end(), Ball{0});
  return majority(oracle, all, params, rng);
}

RunResult balanced(CountingOracle& oracle, std::span<const Ball> balls, const Params& params, RandomStream& rng) {
  params.validate();
  const auto start = oracle.comparisons();
  Solver solver(oracle, params, rng);
  Solved solved = solver.entry(Branch::Balanced, balls, std::nullopt);
  return finish(solver, std::move(solved), start, oracle);
}

RunResult heavy(CountingOracle& oracle, std::span<const Ball> balls, Ball candidate, const Params& params,
                RandomStream& rng) {
  params.validate();
  if (std::find(balls.begin(), balls.end(), candidate) == balls.end()) {
    throw ContractViolation("heavy: candidate is not among the balls");
  }
  const auto start = oracle.comparisons();
  Solver solver(oracle, params, rng);
  Solved solved = solver.entry(Branch::Heavy, balls, candidate);
  return finish(solver, std::move(solved), start, oracle);
}

RunResult light(CountingOracle& oracle, std::span<const Ball> balls, const Params& params, RandomStream& rng) {
  params.validate();
  const auto start = oracle.comparisons();
  Solver solver(oracle, params, rng);
  Solved solved = solver.entry(Branch::Light, balls, std::nullopt);
  return finish(solver, std::move(solved), start, oracle);
}

}  // namespace majority
