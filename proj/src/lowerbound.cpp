#include "majority/lowerbound.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <thread>

namespace majority::lab {

ComponentState merge_states(const ComponentState& ci, bool x_in_b, const ComponentState& cj, bool y_in_b,
                            bool equal) {
  // Part of j that lands on the same side as part A of i.
  const bool flip = x_in_b ^ y_in_b ^ !equal;
  return flip ? ComponentState{ci.a + cj.b, ci.b + cj.a} : ComponentState{ci.a + cj.a, ci.b + cj.b};
}

MergeCase classify(const ComponentState& ci, const ComponentState& cj) {
  const int mono = (ci.monochromatic() ? 1 : 0) + (cj.monochromatic() ? 1 : 0);
  if (mono == 2) return MergeCase::BothMono;
  if (mono == 1) return MergeCase::MonoDi;
  return MergeCase::BothDi;
}

AdversaryWorld::AdversaryWorld(std::size_t n)
    : parent_(n), parity_(n, 0), state_(n), rep_a_(n), rep_b_(n, -1), components_(n), total_balance_(n), nonzero_(n) {
  if (n == 0) throw ContractViolation("AdversaryWorld: n must be positive");
  std::iota(parent_.begin(), parent_.end(), Ball{0});
  std::iota(rep_a_.begin(), rep_a_.end(), std::int64_t{0});
}

Ball AdversaryWorld::find(Ball x) {
  Ball root = x;
  std::uint8_t acc = 0;
  while (parent_[root] != root) {
    acc ^= parity_[root];
    root = parent_[root];
  }
  // Compress, fixing each node's parity to be relative to the root.
  while (parent_[x] != root) {
    const Ball next = parent_[x];
    const std::uint8_t here = parity_[x];
    parent_[x] = root;
    parity_[x] = acc;
    acc ^= here;
    x = next;
  }
  return root;
}

bool AdversaryWorld::in_b(Ball x) {
  find(x);
  return parity_[x] != 0 && parent_[x] != x;
}

std::uint64_t AdversaryWorld::max_balance() const {
  std::uint64_t best = 0;
  for (std::size_t i = 0; i < parent_.size(); ++i) {
    if (parent_[i] == i) best = std::max(best, state_[i].balance());
  }
  return best;
}

std::vector<Ball> AdversaryWorld::roots() const {
  std::vector<Ball> out;
  out.reserve(components_);
  for (std::size_t i = 0; i < parent_.size(); ++i) {
    if (parent_[i] == i) out.push_back(static_cast<Ball>(i));
  }
  return out;
}

bool AdversaryWorld::compare(Ball x, Ball y, RandomStream& rng) {
  if (x >= size() || y >= size()) throw ContractViolation("AdversaryWorld::compare: ball out of range");
  const Ball rx = find(x);
  const Ball ry = find(y);
  if (rx == ry) return false;
  merge(rx, in_b(x), ry, in_b(y), rng.bernoulli(0.5));
  return true;
}

Ball AdversaryWorld::merge(Ball ri, bool side_i, Ball rj, bool side_j, bool equal) {
  if (ri >= size() || rj >= size() || parent_[ri] != ri || parent_[rj] != rj) {
    throw ContractViolation("AdversaryWorld::merge: arguments must be component roots");
  }
  if (ri == rj) throw ContractViolation("AdversaryWorld::merge: components must differ");
  const ComponentState ci = state_[ri];
  const ComponentState cj = state_[rj];
  const MergeCase kind = classify(ci, cj);

  // Balls on the far side of each compared ball, if any.
  const std::int64_t x_other = side_i ? rep_a_[ri] : rep_b_[ri];
  const std::int64_t y_other = side_j ? rep_a_[rj] : rep_b_[rj];
  std::size_t created = 0;
  auto add_edge = [&](std::int64_t endpoint) {
    nonverified_.push_back(static_cast<Ball>(endpoint));
    ++created;
  };
  if (equal) {
    // (x, y) is verified; (x', y') is inferred.
    if (x_other >= 0 && y_other >= 0) add_edge(x_other);
  } else {
    // (x, y') and (x', y) are inferred; the compared edge is negative.
    if (y_other >= 0) add_edge(y_other);
    if (x_other >= 0) add_edge(x_other);
  }

  switch (kind) {
    case MergeCase::BothMono: ++tally_.both_mono; tally_.nonverified_both_mono += created; break;
    case MergeCase::MonoDi: ++tally_.mono_di; tally_.nonverified_mono_di += created; break;
    case MergeCase::BothDi: ++tally_.both_di; tally_.nonverified_both_di += created; break;
  }

  const bool flip = side_i ^ side_j ^ !equal;
  const ComponentState merged = merge_states(ci, side_i, cj, side_j, equal);
  if (kind == MergeCase::BothMono && !merged.monochromatic()) ++tally_.both_mono_to_di;

  // Union by size; parity of the attached root relative to the new root is `flip`.
  Ball root = ri;
  Ball child = rj;
  if (ci.size() < cj.size()) std::swap(root, child);
  parent_[child] = root;
  parity_[child] = flip ? 1 : 0;
  state_[root] = (root == rj && flip) ? ComponentState{merged.b, merged.a} : merged;
  if (rep_a_[root] < 0) rep_a_[root] = flip ? rep_b_[child] : rep_a_[child];
  if (rep_b_[root] < 0) rep_b_[root] = flip ? rep_a_[child] : rep_b_[child];

  total_balance_ = total_balance_ - ci.balance() - cj.balance() + merged.balance();
  nonzero_ = nonzero_ - (ci.delta() != 0) - (cj.delta() != 0) + (merged.delta() != 0);
  --components_;
  ++steps_;
  return root;
}

std::optional<std::size_t> AdversaryWorld::nonverified_majority_edges() {
  if (components_ != 1) throw ContractViolation("nonverified_majority_edges: game has not finished");
  const Ball root = find(0);
  const ComponentState& s = state_[root];
  if (s.a == s.b) return std::nullopt;
  const bool majority_is_b = s.b > s.a;
  std::size_t count = 0;
  for (const Ball e : nonverified_) {
    if (in_b(e) == majority_is_b) ++count;
  }
  return count;
}

void merge_step(AdversaryWorld& world, Ball i, Ball j, bool side_i, bool side_j, RandomStream& rng) {
  const Ball ri = world.find(i);
  const Ball rj = world.find(j);
  if (ri == rj) return;
  world.merge(ri, side_i, rj, side_j, rng.bernoulli(0.5));
}

std::string_view to_string(MergeStrategy strategy) {
  switch (strategy) {
    case MergeStrategy::UniformRandom: return "uniform";
    case MergeStrategy::SmallestFirst: return "smallest";
    case MergeStrategy::LargestFirst: return "largest";
  }
  return "unknown";
}

std::optional<MergeStrategy> parse_strategy(std::string_view text) {
  for (const auto s : {MergeStrategy::UniformRandom, MergeStrategy::SmallestFirst, MergeStrategy::LargestFirst}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

namespace {

struct TrialResult {
  double terminal = 0.0;
  std::optional<std::size_t> majority_edges;
  MergeTally tally;
  std::vector<std::size_t> nonzero;       // per checkpoint
  std::vector<std::uint64_t> max_balance;
};

std::vector<std::size_t> checkpoint_steps(std::size_t n, std::size_t count) {
  std::vector<std::size_t> steps;
  if (count == 0 || n < 2) return steps;
  for (std::size_t c = 0; c < count; ++c) steps.push_back((n - 1) * c / count);
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  return steps;
}

// Picks two components, merges them with a fair-coin outcome, from random sides.
template <typename Pick>
TrialResult play(std::size_t n, RandomStream rng, const std::vector<std::size_t>& checkpoints, Pick&& pick) {
  AdversaryWorld world(n);
  TrialResult out;
  std::size_t next_cp = 0;
  auto record = [&] {
    while (next_cp < checkpoints.size() && checkpoints[next_cp] == world.steps()) {
      out.nonzero.push_back(world.nonzero_balance());
      out.max_balance.push_back(world.max_balance());
      ++next_cp;
    }
  };
  record();
  while (world.components() > 1) {
    const auto [ri, rj] = pick(world, rng);
    const bool side_i = world.state(ri).b > 0 && rng.bernoulli(0.5);
    const bool side_j = world.state(rj).b > 0 && rng.bernoulli(0.5);
    const bool equal = rng.bernoulli(0.5);
    const Ball root = world.merge(ri, side_i, rj, side_j, equal);
    pick.merged(world, ri, rj, root);
    record();
  }
  out.terminal = static_cast<double>(world.total_balance());
  out.majority_edges = world.nonverified_majority_edges();
  out.tally = world.tally();
  return out;
}

struct UniformPick {
  std::vector<Ball> live;
  explicit UniformPick(std::size_t n) : live(n) { std::iota(live.begin(), live.end(), Ball{0}); }
  std::pair<Ball, Ball> operator()(AdversaryWorld&, RandomStream& rng) {
    const auto i = static_cast<std::size_t>(rng.below(live.size()));
    auto j = static_cast<std::size_t>(rng.below(live.size() - 1));
    if (j >= i) ++j;
    pi = i;
    pj = j;
    return {live[i], live[j]};
  }
  void merged(AdversaryWorld&, Ball, Ball, Ball root) {
    live[pi] = root;
    live[pj] = live.back();
    live.pop_back();
  }
  std::size_t pi = 0, pj = 0;
};

// Size-ordered heap of roots; stale entries are skipped lazily.
template <typename Compare>
struct HeapPick {
  using Entry = std::pair<std::uint64_t, Ball>;
  std::priority_queue<Entry, std::vector<Entry>, Compare> heap;
  explicit HeapPick(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) heap.emplace(1, static_cast<Ball>(i));
  }
  Ball pop_live(AdversaryWorld& world) {
    for (;;) {
      const auto [size, root] = heap.top();
      heap.pop();
      if (world.find(root) == root && world.state(root).size() == size) return root;
    }
  }
  std::pair<Ball, Ball> operator()(AdversaryWorld& world, RandomStream&) {
    const Ball a = pop_live(world);
    const Ball b = pop_live(world);
    return {a, b};
  }
  void merged(AdversaryWorld& world, Ball, Ball, Ball root) { heap.emplace(world.state(root).size(), root); }
};

TrialResult run_trial(std::size_t n, MergeStrategy strategy, RandomStream rng,
                      const std::vector<std::size_t>& checkpoints) {
  switch (strategy) {
    case MergeStrategy::UniformRandom: {
      UniformPick pick(n);
      return play(n, rng, checkpoints, pick);
    }
    case MergeStrategy::SmallestFirst: {
      HeapPick<std::greater<>> pick(n);
      return play(n, rng, checkpoints, pick);
    }
    case MergeStrategy::LargestFirst: {
      HeapPick<std::less<>> pick(n);
      return play(n, rng, checkpoints, pick);
    }
  }
  throw ContractViolation("simulate_balance: unknown strategy");
}

}  // namespace

BalanceStats simulate_balance(std::size_t n, MergeStrategy strategy, std::size_t trials, const RandomStream& rng,
                              const SimulationOptions& options) {
  if (n == 0) throw ContractViolation("simulate_balance: n must be positive");
  if (trials == 0) throw ContractViolation("simulate_balance: trials must be positive");
  const auto checkpoints = checkpoint_steps(n, options.checkpoints);
  std::vector<TrialResult> results(trials);
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(trials)));
  auto worker = [&](unsigned w) {
    for (std::size_t t = w; t < trials; t += jobs) {
      results[t] = run_trial(n, strategy, rng.derive("balance-trial", t), checkpoints);
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }

  BalanceStats stats;
  stats.n = n;
  stats.trials = trials;
  stats.strategy = strategy;
  double sum = 0.0;
  double edges = 0.0;
  std::size_t edge_trials = 0;
  for (const auto& r : results) {
    sum += r.terminal;
    if (r.majority_edges) {
      edges += static_cast<double>(*r.majority_edges);
      ++edge_trials;
    } else {
      ++stats.ties;
    }
    stats.tally.both_mono += r.tally.both_mono;
    stats.tally.both_mono_to_di += r.tally.both_mono_to_di;
    stats.tally.mono_di += r.tally.mono_di;
    stats.tally.both_di += r.tally.both_di;
    stats.tally.nonverified_both_mono += r.tally.nonverified_both_mono;
    stats.tally.nonverified_mono_di += r.tally.nonverified_mono_di;
    stats.tally.nonverified_both_di += r.tally.nonverified_both_di;
  }
  stats.mean_terminal = sum / static_cast<double>(trials);
  double sq = 0.0;
  for (const auto& r : results) sq += (r.terminal - stats.mean_terminal) * (r.terminal - stats.mean_terminal);
  stats.variance_terminal = trials > 1 ? sq / static_cast<double>(trials - 1) : 0.0;
  stats.mean_nonverified_majority = edge_trials ? edges / static_cast<double>(edge_trials) : 0.0;

  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    TrajectoryPoint p;
    p.step = checkpoints[c];
    double nz = 0.0;
    double mb = 0.0;
    double lo = static_cast<double>(n);
    for (const auto& r : results) {
      nz += static_cast<double>(r.nonzero[c]);
      mb += static_cast<double>(r.max_balance[c]);
      lo = std::min(lo, static_cast<double>(r.nonzero[c]));
    }
    p.mean_nonzero = nz / static_cast<double>(trials);
    p.mean_max_balance = mb / static_cast<double>(trials);
    p.min_nonzero = lo;
    stats.trajectory.push_back(p);
  }
  return stats;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double predict_bound(double k, double n) {
  if (!(n > 0.0)) throw ContractViolation("predict_bound: n must be positive");
  if (k <= 0.0) return 0.5;
  if (k >= 2.0 * n / 3.0) return 1.0;
  return normal_cdf(std::sqrt(1.5 * k / (n - 1.5 * k)));
}

double lower_bound_integrand(double x) {
  if (x >= 2.0 / 3.0) return 0.0;
  const double t = 1.5 * x;
  return (1.0 - normal_cdf(std::sqrt(t / (1.0 - t)))) / 6.0;
}

namespace {

struct Simpson {
  double tolerance;
  int max_depth;
  int min_depth;  // coarse panels can agree by accident near the sqrt at 0
  std::size_t budget;  // integrand evaluations before giving up
  bool failed = false;

  double step(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = lower_bound_integrand(lm);
    const double frm = lower_bound_integrand(rm);
    budget = budget > 2 ? budget - 2 : 0;
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    if (depth >= min_depth && std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
    if (failed || depth >= max_depth || budget == 0) {
      failed = true;
      return left + right + diff / 15.0;
    }
    return step(a, m, fa, flm, fm, left, tol / 2.0, depth + 1) + step(m, b, fm, frm, fb, right, tol / 2.0, depth + 1);
  }

  double integrate(double a, double b) {
    const double fa = lower_bound_integrand(a);
    const double fb = lower_bound_integrand(b);
    const double fm = lower_bound_integrand(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return step(a, b, fa, fm, fb, whole, tolerance, 0);
  }
};

}  // namespace

double lower_bound_constant(double tolerance) {
  if (!(tolerance > 0.0)) throw ContractViolation("lower_bound_constant: tolerance must be positive");
  Simpson simpson{tolerance, 50, 6, std::size_t{1} << 22};
  // Split at the midpoint so the square-root behaviour at 0 and the flat tail
  // near 2/3 are refined independently.
  const double value = simpson.integrate(0.0, 1.0 / 3.0) + simpson.integrate(1.0 / 3.0, 2.0 / 3.0);
  if (simpson.failed) throw ConvergenceError("lower_bound_constant: tolerance not reached");
  return 1.0 + value;
}

std::pair<double, double> beta_interval() {
  static const std::pair<double, double> cached = [] {
    auto f = [](double p) { return ((p - 19.0) * p - 8.0) * p + 8.0; };
    double lo = 0.0;
    double hi = 1.0;  // f(0) = 8 > 0, f(1) = -18 < 0
    while (hi - lo > 1e-15) {
      const double mid = 0.5 * (lo + hi);
      (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return std::pair<double, double>{1.0 - 1.0 / std::sqrt(3.0), 0.5 * (lo + hi)};
  }();
  return cached;
}

}  // namespace majority::lab
