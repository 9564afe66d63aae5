#include "majority/certify.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <unordered_map>

namespace majority {

std::ostream& operator<<(std::ostream& os, const Answer& answer) {
  if (answer.is_majority()) {
    return os << "majority ball=" << answer.witness << " multiplicity=" << answer.multiplicity;
  }
  return os << "no-majority";
}

namespace {

std::uint64_t edge_key(Ball a, Ball b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

EqStructure::EqStructure(std::size_t n, std::span<const ComparisonRecord> transcript) : root_(n) {
  std::iota(root_.begin(), root_.end(), Ball{0});
  std::vector<std::size_t> size(n, 1);
  auto find = [this](Ball x) {
    Ball r = x;
    while (root_[r] != r) r = root_[r];
    while (root_[x] != r) x = std::exchange(root_[x], r);
    return r;
  };
  for (const auto& rec : transcript) {
    if (rec.left >= n || rec.right >= n) throw InconsistentTranscript("transcript references a ball beyond n");
    if (!rec.equal) continue;
    Ball a = find(rec.left);
    Ball b = find(rec.right);
    if (a == b) continue;
    if (size[a] < size[b]) std::swap(a, b);
    root_[b] = a;
    size[a] += size[b];
  }
  class_size_.assign(n, 0);
  for (Ball x = 0; x < n; ++x) {
    root_[x] = find(x);
    ++class_size_[root_[x]];
  }
  class_count_ = static_cast<std::size_t>(std::count_if(class_size_.begin(), class_size_.end(),
                                                        [](std::size_t s) { return s > 0; }));
  for (const auto& rec : transcript) {
    if (rec.equal) continue;
    const Ball a = root_[rec.left];
    const Ball b = root_[rec.right];
    if (a == b) {
      throw InconsistentTranscript("balls " + std::to_string(rec.left) + " and " + std::to_string(rec.right) +
                                   " compared unequal but are joined by equal comparisons");
    }
    conflicts_.push_back(edge_key(a, b));
  }
  std::sort(conflicts_.begin(), conflicts_.end());
  conflicts_.erase(std::unique(conflicts_.begin(), conflicts_.end()), conflicts_.end());
}

bool EqStructure::provably_unequal(Ball x, Ball y) const {
  const Ball a = root_[x];
  const Ball b = root_[y];
  return a != b && std::binary_search(conflicts_.begin(), conflicts_.end(), edge_key(a, b));
}

std::size_t EqStructure::conflicting_classes(Ball x) const {
  const Ball r = root_[x];
  std::size_t count = 0;
  for (const auto key : conflicts_) {
    const auto lo = static_cast<Ball>(key >> 32);
    const auto hi = static_cast<Ball>(key & 0xFFFFFFFFu);
    if (lo == r || hi == r) ++count;
  }
  return count;
}

EqStructure build_eq_structure(std::size_t n, std::span<const ComparisonRecord> transcript) {
  return EqStructure(n, transcript);
}

Answer brute_force_majority(const Instance& instance) {
  std::unordered_map<ColorId, std::pair<std::size_t, Ball>> counts;
  for (Ball x = 0; x < instance.size(); ++x) {
    auto [it, inserted] = counts.try_emplace(instance.color(x), 0, x);
    ++it->second.first;
  }
  for (const auto& [color, entry] : counts) {
    if (entry.first > instance.size() / 2) return Answer::majority(entry.second, entry.first);
  }
  return Answer::none();
}

CheckResult check_majority_claim(const EqStructure& eq, const Answer& answer, std::size_t n) {
  if (!answer.is_majority()) return CheckResult::reject("answer is not a majority claim");
  if (eq.size() != n) return CheckResult::reject("transcript structure size differs from n");
  if (answer.witness >= n) return CheckResult::reject("witness out of range");
  if (answer.multiplicity <= n / 2) return CheckResult::reject("multiplicity does not exceed floor(n/2)");
  if (eq.class_size(answer.witness) != answer.multiplicity) {
    return CheckResult::reject("class of witness has " + std::to_string(eq.class_size(answer.witness)) +
                               " proven members, claim says " + std::to_string(answer.multiplicity));
  }
  const std::size_t others = eq.class_count() - 1;
  const std::size_t resolved = eq.conflicting_classes(answer.witness);
  if (resolved != others) {
    return CheckResult::reject(std::to_string(others - resolved) +
                               " classes are never proven unequal to the witness; count not exact");
  }
  return CheckResult::accept();
}

CheckResult check_no_majority_claim(const EqStructure& eq, const Certificate& cert, std::size_t n) {
  if (eq.size() != n) return CheckResult::reject("transcript structure size differs from n");
  std::vector<char> covered(n, 0);
  auto claim = [&](Ball x) -> bool {
    if (x >= n || covered[x]) return false;
    covered[x] = 1;
    return true;
  };
  for (const auto& [a, b] : cert.pairs) {
    if (!claim(a) || !claim(b)) {
      return CheckResult::reject("pair (" + std::to_string(a) + ", " + std::to_string(b) +
                                 ") overlaps another unit or is out of range");
    }
    if (!eq.provably_unequal(a, b)) {
      return CheckResult::reject("pair (" + std::to_string(a) + ", " + std::to_string(b) +
                                 ") is not proven unequal");
    }
  }
  if (cert.triangle) {
    const auto& t = *cert.triangle;
    for (const auto x : t) {
      if (!claim(x)) return CheckResult::reject("triangle overlaps another unit or is out of range");
    }
    if (!eq.provably_unequal(t[0], t[1]) || !eq.provably_unequal(t[1], t[2]) ||
        !eq.provably_unequal(t[0], t[2])) {
      return CheckResult::reject("triangle is not proven mutually unequal");
    }
  }
  const std::size_t half = n / 2;
  const std::size_t units = cert.units();

  if (!cert.candidate) {
    const std::size_t uncovered = n - cert.covered();
    if (units + uncovered > half) {
      return CheckResult::reject("cover bounds a color by " + std::to_string(units + uncovered) +
                                 " > floor(n/2) = " + std::to_string(half));
    }
    return CheckResult::accept();
  }

  const Ball v = *cert.candidate;
  if (v >= n) return CheckResult::reject("candidate out of range");
  std::size_t uncovered_not_v = 0;
  std::size_t uncovered_unresolved = 0;
  for (Ball x = 0; x < n; ++x) {
    if (covered[x] || eq.same_class(x, v)) continue;
    ++uncovered_not_v;
    if (!eq.provably_unequal(x, v)) ++uncovered_unresolved;
  }
  if (units + uncovered_not_v > half) {
    return CheckResult::reject("bound for colors other than the candidate's is " +
                               std::to_string(units + uncovered_not_v) + " > " + std::to_string(half));
  }
  auto open_unit = [&](std::span<const Ball> members) {
    bool any_unresolved = false;
    for (const auto x : members) {
      if (eq.same_class(x, v)) return false;
      if (!eq.provably_unequal(x, v)) any_unresolved = true;
    }
    return any_unresolved;
  };
  std::size_t open_units = 0;
  for (const auto& [a, b] : cert.pairs) {
    const Ball members[2] = {a, b};
    if (open_unit(members)) ++open_units;
  }
  if (cert.triangle && open_unit(*cert.triangle)) ++open_units;
  const std::size_t v_bound = eq.class_size(v) + open_units + uncovered_unresolved;
  if (v_bound > half) {
    return CheckResult::reject("bound for the candidate's color is " + std::to_string(v_bound) + " > " +
                               std::to_string(half));
  }
  return CheckResult::accept();
}

CheckResult check_answer(const EqStructure& eq, const Answer& answer, const Certificate& cert, std::size_t n) {
  return answer.is_majority() ? check_majority_claim(eq, answer, n) : check_no_majority_claim(eq, cert, n);
}

namespace cover {

Certificate with_candidate(Ball candidate, std::span<const Ball> candidate_balls, std::span<const Ball> singles,
                           std::span<const BallPair> splittable, std::vector<BallPair> fixed) {
  if (singles.size() > candidate_balls.size()) {
    throw std::logic_error("cover::with_candidate: more unmatched singles than candidate balls");
  }
  Certificate cert;
  cert.candidate = candidate;
  cert.pairs = std::move(fixed);
  std::size_t v = 0;
  for (const auto s : singles) cert.pairs.emplace_back(candidate_balls[v++], s);
  std::size_t q = 0;
  while (candidate_balls.size() - v >= 2) {
    if (q == splittable.size()) throw std::logic_error("cover::with_candidate: candidate class too large");
    const auto [a, b] = splittable[q++];
    cert.pairs.emplace_back(candidate_balls[v++], a);
    cert.pairs.emplace_back(candidate_balls[v++], b);
  }
  if (v < candidate_balls.size()) {
    if (q == splittable.size()) throw std::logic_error("cover::with_candidate: no pair left for the triangle");
    const auto [a, b] = splittable[q++];
    cert.triangle = Triangle{candidate_balls[v++], a, b};
  }
  cert.pairs.insert(cert.pairs.end(), splittable.begin() + static_cast<std::ptrdiff_t>(q), splittable.end());
  return cert;
}

}  // namespace cover

}  // namespace majority
