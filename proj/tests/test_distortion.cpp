#include "doctest.h"
#include "fixtures.hpp"

#include "vetokit/distortion.hpp"
#include "vetokit/errors.hpp"
#include "vetokit/io.hpp"
#include "vetokit/rules.hpp"

#include <random>

using namespace vetokit;
using namespace vetokit::fixtures;

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

DistanceMatrix fix_s_certificate() {
  // rows: voters; columns: a, b
  return {{{q(1), q(1)}, {q(2), q(0)}}};
}

std::vector<Rational> finite_values(const PreferenceProfile& p) {
  std::vector<Rational> out;
  for (Candidate c = 0; c < p.candidates(); ++c) {
    const auto r = distortion_of_candidate(p, c);
    REQUIRE_FALSE(r.infinite);
    CHECK(verify_certificate(p, c, r));
    out.push_back(r.value);
  }
  return out;
}

}  // namespace

TEST_CASE("build_lp shape") {
  const auto s = fix_s();
  const auto lp = build_lp(s, 0, 1);
  CHECK(lp.variables == 4);
  const auto& norm = lp.rows.back();
  CHECK(norm.sense == RowSense::Equal);
  CHECK(norm.rhs == 1);
  REQUIRE(norm.terms.size() == 2);
  CHECK(norm.terms[0].var == distance_var(0, 1, 2));
  CHECK(norm.terms[1].var == distance_var(1, 1, 2));
  // 2 consistency rows + (n·m)^2 quadrangle rows + normalisation
  CHECK(lp.rows.size() == 2 + 16 + 1);

  const auto same = solve_lp(build_lp(fix_t(), 1, 1));
  CHECK(same.status == LpStatus::Optimal);
  CHECK(same.value == 1);
}

TEST_CASE("FIX-S certificate") {
  const auto s = fix_s();
  const auto lp = solve_lp(build_lp(s, 0, 1));
  CHECK(lp.status == LpStatus::Optimal);
  CHECK(lp.value == 3);

  DistortionResult r;
  r.value = 3;
  r.reference = 1;
  r.certificate = fix_s_certificate();
  CHECK(verify_certificate(s, 0, r));

  auto broken = r;
  broken.certificate.d[1][0] = q(2) + q(1, 1000);
  CHECK_FALSE(verify_certificate(s, 0, broken));

  auto scaled = r;
  for (auto& row : scaled.certificate.d) {
    for (auto& x : row) x *= 2;
  }
  scaled.value = 6;
  CHECK_FALSE(verify_certificate(s, 0, scaled));

  const auto full = extend_to_full_pseudometric(r.certificate);
  CHECK(full.size() == 4);
  CHECK(triangle_violations(full) == 0);
  CHECK(format_distance_matrix(r.certificate) == "1/1 1/1\n2/1 0/1\n");
}

TEST_CASE("distortion of the classic instances") {
  const auto s = fix_s();
  for (Candidate c = 0; c < 2; ++c) {
    const auto r = distortion_of_candidate(s, c);
    CHECK_FALSE(r.infinite);
    CHECK(r.value == 3);
    CHECK(verify_certificate(s, c, r));
  }
  const auto u = fix_u();
  const auto a = distortion_of_candidate(u, 0);
  CHECK_FALSE(a.infinite);
  CHECK(a.value == 1);
  const auto b = distortion_of_candidate(u, 1);
  CHECK(b.infinite);
  REQUIRE(b.ray);
  CHECK(verify_unbounded_certificate(u, 1, b));

  CHECK(distortion_of_candidate(PreferenceProfile({"x"}, {{0}, {0}}), 0).value == 1);

  const auto one_voter = PreferenceProfile({"a", "b"}, {{0, 1}});
  CHECK(distortion_of_candidate(one_voter, 1).infinite);
  CHECK(distortion_of_candidate(one_voter, 0).value == 1);
}

TEST_CASE("frozen oracle distortion values") {
  CHECK(finite_values(PreferenceProfile::with_default_names({{2, 0, 1}, {2, 1, 0}, {1, 0, 2}})) ==
        std::vector<Rational>{5, 5, 2});
  CHECK(finite_values(PreferenceProfile::with_default_names({{1, 0}, {0, 1}, {0, 1}, {0, 1}})) ==
        std::vector<Rational>{q(5, 3), 7});
  CHECK(finite_values(PreferenceProfile::with_default_names({{2, 1, 0}, {2, 1, 0}, {1, 0, 2}})) ==
        std::vector<Rational>{5, 5, 2});
  CHECK(finite_values(fix_t()) == std::vector<Rational>{3, 2, 5});
  CHECK(finite_values(fix_p()) == std::vector<Rational>{3, 3, 3});
}

TEST_CASE("size cap") {
  const auto p = gen_impartial_culture(11, 10, 1);
  CHECK_THROWS_AS(distortion_of_candidate(p, 0), SizeLimitError);
  CHECK_THROWS_AS(distortion_of_candidate(fix_t(), 0, 8), SizeLimitError);
}

TEST_CASE("pseudometric extension") {
  DistanceMatrix uniform{RationalMatrix(3, std::vector<Rational>(2, q(1)))};
  const auto full = extend_to_full_pseudometric(uniform);
  CHECK(full[0][1] == 2);
  CHECK(full[3][4] == 2);
  CHECK(full[0][0] == 0);
  CHECK(triangle_violations(full) == 0);

  // d(0,a) > d(0,b) + d(1,b) + d(1,a)
  DistanceMatrix bad{{{q(5), q(1)}, {q(1), q(1)}}};
  CHECK_THROWS_AS(extend_to_full_pseudometric(bad), std::invalid_argument);
  CHECK(triangle_violations(extend_to_full_pseudometric(bad, ExtensionCheck::None)) > 0);

  DistanceMatrix negative{{{q(-1)}}};
  CHECK_THROWS_AS(extend_to_full_pseudometric(negative), std::invalid_argument);
}

TEST_CASE("distortion properties") {
  std::mt19937_64 rng(1001);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    const std::size_t m = 1 + rng() % 4;
    const auto p = gen_impartial_culture(n, m, rng());
    for (Candidate c = 0; c < m; ++c) {
      const auto r = distortion_of_candidate(p, c);
      if (r.infinite) {
        CHECK(verify_unbounded_certificate(p, c, r));
        continue;
      }
      CHECK(r.value >= 1);
      CHECK(verify_certificate(p, c, r));
      CHECK(triangle_violations(extend_to_full_pseudometric(r.certificate)) == 0);
    }
    const auto w = plurality_veto(p);
    const auto r = distortion_of_candidate(p, w);
    CHECK_FALSE(r.infinite);
    CHECK(r.value <= 3);
  }

  // Unanimous top choice has distortion 1.
  const auto unanimous = PreferenceProfile::with_default_names({{1, 0, 2}, {1, 2, 0}, {1, 0, 2}});
  CHECK(distortion_of_candidate(unanimous, 1).value == 1);
}

TEST_CASE("sampled metrics bound the distortion from below") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto mi = gen_euclidean(2 + seed % 3, 2 + seed % 2, seed);
    Rational best = empirical_social_cost(mi, 0);
    for (Candidate c = 1; c < mi.profile.candidates(); ++c) best = std::min(best, empirical_social_cost(mi, c));
    for (Candidate c = 0; c < mi.profile.candidates(); ++c) {
      const auto r = distortion_of_candidate(mi.profile, c);
      if (r.infinite) continue;
      const auto cost = empirical_social_cost(mi, c);
      if (best == 0) {
        CHECK(cost == 0);
      } else {
        CHECK(cost / best <= r.value);
      }
    }
  }
}
