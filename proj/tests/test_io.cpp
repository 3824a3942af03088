#include "doctest.h"
#include "fixtures.hpp"

#include "vetokit/errors.hpp"
#include "vetokit/io.hpp"

#include <random>

using namespace vetokit;
using namespace vetokit::fixtures;

TEST_CASE("parse native format") {
  const auto t = parse_profile("3 3\na b c\na>b>c\nb>a>c\nc>b>a");
  CHECK(t == fix_t());
  CHECK(parse_profile("# a comment\n3 3\n\na b c\na > b > c\nb>a>c\n# mid\nc>b>a\n") == fix_t());
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](std::string_view text) {
    try {
      parse_profile(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{999};
  };
  CHECK(line_of("2 2\na b\na>b\nb>a>a") == 4);
  CHECK(line_of("x 2\na b\na>b\nb>a") == 1);
  CHECK(line_of("2 2\na b c\na>b\nb>a") == 2);
  CHECK(line_of("2 2\na b\na>z\nb>a") == 3);
  CHECK(line_of("2 2\na b\na\nb>a") == 3);
  CHECK(line_of("2 2\na b\na>b\nb>a\na>b") == 5);
  CHECK(line_of("2 2\na b\na>b") == 3);
  CHECK(line_of("2 2\na a\na>b\nb>a") == 2);

  try {
    parse_profile("2 2\na b\na>b\nb>a>a");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("duplicate candidate") != std::string::npos);
  }
}

TEST_CASE("PrefLib strict-order-complete ingestion") {
  const auto p = parse_profile("2: 1,2,3\n");
  CHECK(p.voters() == 2);
  CHECK(p.names() == std::vector<std::string>{"c1", "c2", "c3"});
  CHECK(p.rankings() == std::vector<std::vector<Candidate>>{{0, 1, 2}, {0, 1, 2}});

  const auto q = parse_profile(
      "# FILE NAME: x.soc\n# DATA TYPE: soc\n# NUMBER ALTERNATIVES: 3\n"
      "# ALTERNATIVE NAME 1: Alice Smith\n# ALTERNATIVE NAME 2: Bob\n# ALTERNATIVE NAME 3: Carol\n"
      "2: 1,2,3\n1: 3,2,1\n");
  CHECK(q.names() == std::vector<std::string>{"Alice_Smith", "Bob", "Carol"});
  CHECK(q.voters() == 3);
  CHECK(q.ranking(2)[0] == 2);

  CHECK_THROWS_AS(parse_profile("# NUMBER ALTERNATIVES: 3\n1: 1,2\n"), ParseError);
  CHECK_THROWS_AS(parse_profile("1: 1,{2,3}\n"), ParseError);
  CHECK_THROWS_AS(parse_profile("1: 1,1,2\n"), ParseError);
  CHECK_THROWS_AS(parse_profile("1: 1,4,2\n"), ParseError);
}

TEST_CASE("serialize round trips") {
  CHECK(parse_profile(serialize_profile(fix_s())) == fix_s());
  CHECK(parse_profile(serialize_profile(fix_p())) == fix_p());
  CHECK_THROWS_AS(PreferenceProfile({"", "b"}, {{0, 1}}), std::invalid_argument);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = gen_impartial_culture(1 + rng() % 8, 1 + rng() % 6, rng());
    CHECK(parse_profile(serialize_profile(p)) == p);
  }
}

TEST_CASE("impartial culture generator") {
  const auto one = gen_impartial_culture(1, 1, 42);
  CHECK(one.voters() == 1);
  CHECK(one.candidates() == 1);
  CHECK(gen_impartial_culture(7, 4, 9) == gen_impartial_culture(7, 4, 9));
  const auto big = gen_impartial_culture(1000, 5, 3);
  CHECK(big.voters() == 1000);  // construction validates every permutation
  CHECK_THROWS_AS(gen_impartial_culture(0, 3, 1), std::invalid_argument);
}

TEST_CASE("euclidean generator") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto mi = gen_euclidean(1 + seed % 7, 1 + seed % 5, seed);
    CHECK(metric_instance_consistent(mi));
  }
  const auto a = gen_euclidean(6, 4, 77);
  const auto b = gen_euclidean(6, 4, 77);
  CHECK(a.profile == b.profile);
  CHECK(a.distances == b.distances);

  const auto mi = gen_euclidean(5, 3, 1);
  const auto back = parse_metric(mi.profile, serialize_metric(mi));
  CHECK(back.distances == mi.distances);
  CHECK(metric_instance_consistent(back));
}

TEST_CASE("colinear ties are broken by candidate index") {
  PlanarPoint v{0, 0};
  const std::vector<PlanarPoint> cands{{1, 0}, {0, 1}};
  CHECK(linf_distance(v, cands[0]) == linf_distance(v, cands[1]));
  MetricInstance mi{PreferenceProfile({"c1", "c2"}, {{0, 1}}),
                    {{Rational(1), Rational(1)}},
                    std::vector<PlanarPoint>{v},
                    cands};
  CHECK(metric_instance_consistent(mi));
}

TEST_CASE("empirical_social_cost") {
  const auto s = fix_s();
  MetricInstance mi{s, {{0, 1}, {1, 0}}, std::nullopt, std::nullopt};
  CHECK(empirical_social_cost(mi, 0) == 1);
  CHECK(empirical_social_cost(mi, 1) == 1);

  MetricInstance zero{fix_u(), {{0, 1}, {0, 1}}, std::nullopt, std::nullopt};
  CHECK(empirical_social_cost(zero, 0) == 0);

  MetricInstance single{PreferenceProfile({"a", "b"}, {{0, 1}}), {{Rational(2, 3), 1}}, std::nullopt,
                        std::nullopt};
  CHECK(empirical_social_cost(single, 0) == Rational(2, 3));
}
