#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "majority/answer.hpp"
#include "majority/instance.hpp"
#include "majority/oracle.hpp"

namespace majority {

using BallPair = std::pair<Ball, Ball>;
using Triangle = std::array<Ball, 3>;

/// Transcript-backed witness for an Answer.
///
/// For a majority answer the claim itself is checked against the equality
/// classes and no further data is needed. For no majority, `pairs` and the
/// optional `triangle` are ball-disjoint units whose members are provably
/// of different colors; each unit holds at most one ball of any color. The
/// triangle is only needed when n is odd.
struct Certificate {
  std::optional<Ball> candidate;
  std::vector<BallPair> pairs;
  std::optional<Triangle> triangle;

  std::size_t units() const { return pairs.size() + (triangle ? 1 : 0); }
  std::size_t covered() const { return 2 * pairs.size() + (triangle ? 3 : 0); }
};

// An answer together with the witness that proves it from the transcript.
struct Verdict {
  Answer answer;
  Certificate certificate;
};

// A transcript that contradicts itself: an unequal record inside a class
// joined by equal records. Cannot happen with an honest oracle.
class InconsistentTranscript : public std::runtime_error {
 public:
  explicit InconsistentTranscript(const std::string& what) : std::runtime_error(what) {}
};

/// What a transcript proves under arbitrary coloring: classes are the
/// components of equal records, and two balls are provably unequal exactly
/// when their classes are joined by at least one unequal record. Chains of
/// several unequal records prove nothing once three or more colors exist.
class EqStructure {
 public:
  EqStructure(std::size_t n, std::span<const ComparisonRecord> transcript);

  std::size_t size() const { return root_.size(); }
  Ball root(Ball x) const { return root_[x]; }
  bool same_class(Ball x, Ball y) const { return root_[x] == root_[y]; }
  std::size_t class_size(Ball x) const { return class_size_[root_[x]]; }
  std::size_t class_count() const { return class_count_; }

  bool provably_unequal(Ball x, Ball y) const;
  // Number of distinct classes joined to class(x) by an unequal record.
  std::size_t conflicting_classes(Ball x) const;

 private:
  std::vector<Ball> root_;
  std::vector<std::size_t> class_size_;
  std::size_t class_count_ = 0;
  std::vector<std::uint64_t> conflicts_;  // sorted (min_root << 32 | max_root)
};

struct CheckResult {
  bool accepted = false;
  std::string reason;

  explicit operator bool() const { return accepted; }
  static CheckResult accept() { return {true, {}}; }
  static CheckResult reject(std::string why) { return {false, std::move(why)}; }
};

// Exact answer by counting ground-truth colors. Test and audit use only.
Answer brute_force_majority(const Instance& instance);

EqStructure build_eq_structure(std::size_t n, std::span<const ComparisonRecord> transcript);

// Accepts iff class(witness) has exactly `multiplicity` balls, that count
// exceeds floor(n/2), and every other class is provably unequal to it.
CheckResult check_majority_claim(const EqStructure& eq, const Answer& answer, std::size_t n);

// Accepts iff the units are disjoint and certified, and both color bounds
// hold: any color avoiding class(candidate), and the candidate's color.
// Without a candidate the cover alone must bound every color.
CheckResult check_no_majority_claim(const EqStructure& eq, const Certificate& cert, std::size_t n);

// Dispatches on the answer kind.
CheckResult check_answer(const EqStructure& eq, const Answer& answer, const Certificate& cert, std::size_t n);

namespace cover {

/// Builds a no-majority cover when every ball is resolved against a
/// candidate color.
///
/// `candidate_balls` are free balls of the candidate's class, `singles` are
/// free balls provably unequal to it, `splittable` are provably-unequal
/// pairs of non-candidate balls, and `fixed` are pairs kept as they are.
/// Candidate balls are matched to singles first, then two at a time into
/// split pairs; an odd leftover forms a triangle with a split pair. Throws
/// std::logic_error if the inputs cannot be covered, which means the
/// candidate actually holds a majority.
Certificate with_candidate(Ball candidate, std::span<const Ball> candidate_balls,
                           std::span<const Ball> singles, std::span<const BallPair> splittable,
                           std::vector<BallPair> fixed);

/// Lifts a cover of the reduced set X (one survivor per equal pair) back to
/// the full set, given each survivor's equal partner. Pairs double; a
/// triangle becomes three crossing pairs.
template <typename PartnerOf>
void lift_into(const Certificate& reduced, PartnerOf&& partner_of, std::vector<BallPair>& out) {
  for (const auto& [a, b] : reduced.pairs) {
    out.emplace_back(a, b);
    out.emplace_back(partner_of(a), partner_of(b));
  }
  if (reduced.triangle) {
    const auto& t = *reduced.triangle;
    out.emplace_back(t[0], partner_of(t[1]));
    out.emplace_back(t[1], partner_of(t[2]));
    out.emplace_back(t[2], partner_of(t[0]));
  }
}

}  // namespace cover

}  // namespace majority
