#include "majority/boyer_moore.hpp"

#include <vector>

namespace majority {

Verdict boyer_moore(CountingOracle& oracle, std::span<const Ball> balls, std::vector<char>* candidate_class) {
  if (balls.empty()) throw ContractViolation("boyer_moore: empty input");
  const std::size_t n = balls.size();
  if (n == 1) {
    if (candidate_class) candidate_class->assign(1, 1);
    return {Answer::majority(balls[0], 1), Certificate{balls[0], {}, {}}};
  }

  // Positions currently counted for the candidate; the bottom is the candidate.
  std::vector<std::size_t> stack;
  // Cancelled pairs: (counted candidate ball, ball that differed from it).
  std::vector<std::pair<std::size_t, std::size_t>> cancelled;
  stack.reserve(n);
  cancelled.reserve(n / 2);

  stack.push_back(0);
  for (std::size_t i = 1; i < n; ++i) {
    if (stack.empty()) {
      stack.push_back(i);
      continue;
    }
    if (oracle.cmp(balls[stack.front()], balls[i])) {
      stack.push_back(i);
    } else {
      cancelled.emplace_back(stack.back(), i);
      stack.pop_back();
    }
  }

  if (stack.empty()) {
    Certificate cert;
    for (const auto& [a, b] : cancelled) cert.pairs.emplace_back(balls[a], balls[b]);
    return {Answer::none(), std::move(cert)};
  }

  const std::size_t candidate_pos = stack.front();
  const Ball candidate = balls[candidate_pos];
  std::vector<char> same(n, 0);
  same[candidate_pos] = 1;
  std::size_t count = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == candidate_pos) continue;
    if (oracle.cmp(candidate, balls[i])) {
      same[i] = 1;
      ++count;
    }
  }
  if (count > n / 2) {
    if (candidate_class) *candidate_class = std::move(same);
    return {Answer::majority(candidate, count), Certificate{candidate, {}, {}}};
  }

  std::vector<Ball> candidate_balls;
  for (const auto pos : stack) candidate_balls.push_back(balls[pos]);
  std::vector<BallPair> splittable;
  std::vector<BallPair> fixed;
  for (const auto& [a, b] : cancelled) {
    (same[a] || same[b] ? fixed : splittable).emplace_back(balls[a], balls[b]);
  }
  return {Answer::none(), cover::with_candidate(candidate, candidate_balls, {}, splittable, std::move(fixed))};
}

}  // namespace majority
