#include "doctest.h"
#include "fixtures.hpp"

#include "vetokit/axioms.hpp"
#include "vetokit/io.hpp"
#include "vetokit/rules.hpp"

#include <random>

using namespace vetokit;
using namespace vetokit::fixtures;

TEST_CASE("plurality_veto") {
  CHECK(plurality_veto(fix_t(), {0, 1, 2}) == cand(fix_t(), "b"));
  CHECK(plurality_veto(fix_c(), {0, 1, 2}) == cand(fix_c(), "a"));
  CHECK(plurality_veto(fix_c()) == cand(fix_c(), "a"));
  const auto solo = PreferenceProfile({"a", "b", "c"}, {{2, 0, 1}});
  CHECK(plurality_veto(solo) == 2);
  CHECK_THROWS_AS(plurality_veto(fix_t(), {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(plurality_veto(fix_t(), {0, 1, 1}), std::invalid_argument);
}

TEST_CASE("plurality_matching_winners") {
  const auto t = fix_t();
  const auto winners = plurality_matching_winners(t);
  for (const auto& order : std::vector<VetoOrder>{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}) {
    CHECK(winners.contains(plurality_veto(t, order)));
  }
  CHECK(plurality_matching_winners(fix_c()).contains(cand(fix_c(), "a")));
  CHECK(plurality_matching_winners(PreferenceProfile({"x"}, {{0}, {0}})) == CandidateSet::full(1));
}

TEST_CASE("composite_distortion_rule") {
  const auto p = fix_p();
  const auto w = composite_distortion_rule(p);
  CHECK((w == cand(p, "c1") || w == cand(p, "c3")));
  CHECK(composite_distortion_rule(p, {0, 1, 2}) != composite_distortion_rule(p, {2, 1, 0}));
  CHECK(composite_distortion_rule(fix_u()) == cand(fix_u(), "a"));
  CHECK(plurality_matching_winners(fix_t()).contains(composite_distortion_rule(fix_t())));
}

TEST_CASE("serial_dictatorship") {
  const auto s = serial_dictatorship(fix_s(), {0, 1}, 2);
  CHECK(s.assignment[0] == std::optional<Candidate>(0));
  CHECK(s.assignment[1] == std::optional<Candidate>(1));
  const auto u = serial_dictatorship(fix_u(), {0, 1}, 2);
  CHECK(u.assignment[0] == std::optional<Candidate>(0));
  CHECK(u.assignment[1] == std::optional<Candidate>(1));
  const auto u2 = serial_dictatorship(fix_u(), {1, 0}, 2);
  CHECK(u2.assignment[1] == std::optional<Candidate>(0));
  CHECK(serial_dictatorship(fix_t(), {0, 1, 2}, 0).size() == 0);
  CHECK_THROWS_AS(serial_dictatorship(fix_u(), {0, 1}, 3), std::invalid_argument);
}

TEST_CASE("random_priority") {
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto mu = random_priority(fix_s(), 2, seed, 10).mu;
    CHECK(mu == RationalMatrix{{1, 0}, {0, 1}});
  }
  const auto one = random_priority(fix_u(), 2, 9, 1).mu;
  CHECK(((one == RationalMatrix{{1, 0}, {0, 1}}) || (one == RationalMatrix{{0, 1}, {1, 0}})));
  const auto solo = PreferenceProfile({"a", "b", "c"}, {{2, 0, 1}});
  CHECK(random_priority(solo, 1, 4, 7).mu == RationalMatrix{{0, 0, 1}});
  CHECK(random_priority(fix_u(), 2, 5, 400).mu == random_priority(fix_u(), 2, 5, 400).mu);
}

TEST_CASE("rule properties on random profiles") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const std::size_t m = 1 + rng() % 5;
    const auto p = gen_impartial_culture(n, m, rng());
    const auto winners = plurality_matching_winners(p);
    CHECK_FALSE(winners.empty());
    for (int r = 0; r < 5; ++r) CHECK(winners.contains(plurality_veto(p, random_order(n, rng))));
    CHECK(winners.contains(composite_distortion_rule(p)));
    const auto scores = plurality_scores(p);
    for (auto c : winners.members()) CHECK(scores[c] > 0);
  }
}

TEST_CASE("serial dictatorship is Pareto optimal") {
  std::mt19937_64 rng(505);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    const std::size_t m = 1 + rng() % 4;
    const auto p = gen_impartial_culture(n, m, rng());
    const auto sigma = random_order(n, rng);
    for (std::size_t k = 0; k <= std::min(n, m); ++k) {
      const auto mm = serial_dictatorship(p, sigma, k);
      CHECK(mm.is_injective());
      CHECK(mm.size() == k);
      CHECK(pareto_optimal_bruteforce(p, mm, k));
    }
  }
}
