#include <doctest.h>

#include <numeric>

#include "majority/boyer_moore.hpp"
#include "../support/oracles.hpp"

using namespace majority;

namespace {

std::vector<Ball> all_balls(std::size_t n) {
  std::vector<Ball> balls(n);
  std::iota(balls.begin(), balls.end(), Ball{0});
  return balls;
}

Verdict run(const Instance& inst, std::uint64_t* comparisons = nullptr, Transcript* transcript = nullptr) {
  CountingOracle oracle(inst, transcript != nullptr);
  const auto balls = all_balls(inst.size());
  auto v = boyer_moore(oracle, balls);
  if (comparisons) *comparisons = oracle.comparisons();
  if (transcript) *transcript = oracle.take_transcript();
  return v;
}

}  // namespace

TEST_CASE("small hand-checked inputs") {
  const auto aab = run(Instance({0, 0, 1}));
  CHECK(aab.answer.is_majority());
  CHECK(aab.answer.multiplicity == 2);
  CHECK(aab.answer.witness != 2);

  CHECK_FALSE(run(Instance({0, 1, 0, 1})).answer.is_majority());

  std::uint64_t cost = 0;
  const auto aaaa = run(Instance({0, 0, 0, 0}), &cost);
  CHECK(aaaa.answer == Answer::majority(0, 4));
  CHECK(cost == 6);
}

TEST_CASE("one ball is its own majority at no cost") {
  std::uint64_t cost = 1;
  CHECK(run(Instance({5}), &cost).answer == Answer::majority(0, 1));
  CHECK(cost == 0);
}

TEST_CASE("empty input is a contract violation") {
  const Instance inst({0});
  CountingOracle oracle(inst);
  CHECK_THROWS_AS(boyer_moore(oracle, std::span<const Ball>{}), ContractViolation);
}

TEST_CASE("matches brute force and the cost bound on every small instance") {
  for (std::size_t n = 1; n <= 7; ++n) {
    testsupport::for_each_coloring(n, 3, [&](const std::vector<ColorId>& colors) {
      const Instance inst(colors);
      std::uint64_t cost = 0;
      Transcript t;
      const auto v = run(inst, &cost, &t);
      const auto truth = brute_force_majority(inst);
      REQUIRE(v.answer.kind == truth.kind);
      if (truth.is_majority()) {
        REQUIRE(v.answer.multiplicity == truth.multiplicity);
        REQUIRE(colors[v.answer.witness] == colors[truth.witness]);
      }
      REQUIRE(cost <= 2 * n - 2);
      const auto eq = build_eq_structure(n, t);
      REQUIRE(check_answer(eq, v.answer, v.certificate, n).accepted);
    });
  }
}

TEST_CASE("runs on a subset of balls") {
  const Instance inst({1, 2, 2, 1, 2, 3});
  CountingOracle oracle(inst);
  const std::vector<Ball> subset{1, 2, 5};
  std::vector<char> in_class;
  const auto v = boyer_moore(oracle, subset, &in_class);
  REQUIRE(v.answer.is_majority());
  CHECK(v.answer.multiplicity == 2);
  CHECK(inst.color(v.answer.witness) == 2);
  CHECK(in_class == std::vector<char>{1, 1, 0});
}

TEST_CASE("relabeling colors does not change the run") {
  RandomStream rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = generate(dist::Uniform{3}, 41, rng);
    std::vector<ColorId> relabeled = inst.colors();
    for (auto& c : relabeled) c = 1000 + 7 * (2 - c);
    std::uint64_t c1 = 0;
    std::uint64_t c2 = 0;
    Transcript t1;
    Transcript t2;
    const auto a = run(inst, &c1, &t1);
    const auto b = run(Instance(relabeled), &c2, &t2);
    CHECK(a.answer == b.answer);
    CHECK(t1 == t2);
  }
}
