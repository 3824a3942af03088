#include "doctest.h"
#include "fixtures.hpp"

#include "vetokit/axioms.hpp"
#include "vetokit/errors.hpp"
#include "vetokit/io.hpp"

#include <random>

using namespace vetokit;
using namespace vetokit::fixtures;

namespace {

CandidateSet all_but(std::size_t m, Candidate c) {
  auto s = CandidateSet::full(m);
  s.erase(c);
  return s;
}

}  // namespace

TEST_CASE("veto_power") {
  CHECK(veto_power(2, 4, 3) == 1);
  CHECK(veto_power(2, 3, 3) == 1);
  CHECK(veto_power(3, 3, 3) == 2);
  CHECK(veto_power(1, 4, 3) == 0);
  CHECK(veto_power(4, 4, 3) == 2);
  CHECK(veto_power(1, 1, 5) == 4);
}

TEST_CASE("veto core on the fixtures") {
  const auto p = fix_p();
  CHECK(veto_core(p) == CandidateSet(3, {1}));

  const auto v1 = veto_core_member(p, cand(p, "c1"));
  CHECK_FALSE(v1.member);
  REQUIRE(v1.witness);
  CHECK(veto_witness_valid(p, 0, *v1.witness));
  CHECK(v1.witness->voters == VoterSet(4, {2, 3}));
  CHECK(v1.witness->blocked_by == CandidateSet(3, {1, 2}));
  CHECK_FALSE(veto_core_member(p, cand(p, "c3")).member);
  CHECK(veto_core_member(p, cand(p, "c2")).member);

  const auto t = fix_t();
  CHECK(veto_core(t) == CandidateSet(3, {0, 1}));
  const auto vc = veto_core_member(t, cand(t, "c"));
  REQUIRE(vc.witness);
  CHECK(veto_witness_valid(t, 2, *vc.witness));
  CHECK(VoterSet(3, {0, 1}).is_subset_of(vc.witness->voters));
  CHECK(vc.witness->blocked_by == CandidateSet(3, {0, 1}));

  CHECK(veto_core(fix_s()) == CandidateSet::full(2));
  CHECK(veto_core(fix_u()) == CandidateSet(2, {0}));
  CHECK(veto_core(PreferenceProfile({"x"}, {{0}})) == CandidateSet::full(1));
}

TEST_CASE("witness validation rejects bad witnesses") {
  const auto t = fix_t();
  CHECK_FALSE(veto_witness_valid(t, 2, {VoterSet(3, {0, 1}), CandidateSet(3, {0})}));
  CHECK_FALSE(veto_witness_valid(t, 2, {VoterSet(3, {0, 1, 2}), CandidateSet(3, {0, 1})}));
  CHECK_FALSE(veto_witness_valid(t, 0, {VoterSet(3, {2}), CandidateSet(3, {0, 1})}));
  CHECK_FALSE(veto_witness_valid(t, 2, {VoterSet(3), CandidateSet(3, {0, 1})}));
  CHECK(veto_witness_valid(t, 2, {VoterSet(3, {0, 1}), CandidateSet(3, {0, 1})}));
}

TEST_CASE("brute-force veto core agrees on fixtures") {
  for (const auto& p : {fix_p(), fix_t(), fix_s(), fix_u(), fix_c()}) {
    for (Candidate c = 0; c < p.candidates(); ++c) {
      CHECK(veto_core_member_bruteforce(p, c) == veto_core_member(p, c).member);
    }
  }
  CHECK_THROWS_AS(veto_core_member_bruteforce(gen_impartial_culture(13, 3, 1), 0), SizeLimitError);
  CHECK_THROWS_AS(veto_core_member_bruteforce(gen_impartial_culture(3, 7, 1), 0), SizeLimitError);
}

TEST_CASE("weak PSC") {
  const auto rp = reverse_profile(fix_p());
  CHECK(weak_psc_satisfied(rp, CandidateSet(3, {0, 2}), 2).satisfied);

  const auto rt = reverse_profile(fix_t());
  const auto verdict = weak_psc_satisfied(rt, CandidateSet(3, {0, 1}), 2);
  CHECK_FALSE(verdict.satisfied);
  REQUIRE(verdict.violation);
  CHECK(psc_violation_valid(rt, CandidateSet(3, {0, 1}), 2, *verdict.violation));
  CHECK(verdict.violation->prefix_set == CandidateSet(3, {2}));

  CHECK_THROWS_AS(weak_psc_satisfied(rp, CandidateSet(3, {0}), 2), std::invalid_argument);

  // Every committee of every size on reverse(FIX-P).
  for (unsigned mask = 0; mask < 8; ++mask) {
    const auto w = CandidateSet::from_mask(3, mask);
    CHECK(weak_psc_bruteforce(rp, w, w.size()) == weak_psc_satisfied(rp, w, w.size()).satisfied);
  }
  CHECK_THROWS_AS(weak_psc_bruteforce(gen_impartial_culture(11, 2, 3), CandidateSet(2, {0}), 1),
                  SizeLimitError);
}

TEST_CASE("weak PSC matches the solid-coalition veto reading") {
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 800; ++trial) {
    const auto p = gen_impartial_culture(1 + rng() % 6, 1 + rng() % 5, rng());
    const auto rp = reverse_profile(p);
    for (Candidate c = 0; c < p.candidates(); ++c) {
      const auto w = all_but(p.candidates(), c);
      const auto verdict = weak_psc_satisfied(rp, w, w.size());
      CHECK(verdict.satisfied == !vetoed_by_solid_coalition(p, c));
      if (!verdict.satisfied) CHECK(psc_violation_valid(rp, w, w.size(), *verdict.violation));
      // Membership in the core implies weak-PSC; the converse can fail.
      if (veto_core_member(p, c).member) CHECK(verdict.satisfied);
    }
  }
}

TEST_CASE("weak PSC differs from the veto core on a 3x3 profile") {
  const auto p = PreferenceProfile::with_default_names({{0, 1, 2}, {0, 1, 2}, {2, 0, 1}});
  CHECK_FALSE(veto_core_member(p, 1).member);
  CHECK(weak_psc_satisfied(reverse_profile(p), CandidateSet(3, {0, 2}), 2).satisfied);
}

TEST_CASE("pareto_matching_criterion") {
  const auto t = fix_t();
  const auto b = pareto_matching_criterion(t, cand(t, "b"));
  CHECK(b.holds);
  CHECK(b.witness.size() == 2);
  CHECK(b.witness.is_injective());

  const auto p = fix_p();
  const auto c1 = pareto_matching_criterion(p, cand(p, "c1"));
  CHECK(c1.holds);
  CHECK_FALSE(veto_core_member(p, cand(p, "c1")).member);
  for (Voter i = 0; i < p.voters(); ++i) {
    if (c1.witness.assignment[i]) CHECK(p.prefers(i, 0, *c1.witness.assignment[i]));
  }

  CHECK(pareto_matching_criterion(PreferenceProfile({"x"}, {{0}, {0}}), 0).holds);
  CHECK_FALSE(pareto_matching_criterion(fix_u(), 1).holds);
}

TEST_CASE("pareto_optimal_bruteforce") {
  CHECK(pareto_optimal_bruteforce(fix_s(), Matching{{0, 1}}, 2));
  // Both voters rank a first, so handing a to either one is optimal.
  CHECK(pareto_optimal_bruteforce(fix_u(), Matching{{1, 0}}, 2));
  CHECK(pareto_optimal_bruteforce(fix_u(), Matching{{0, 1}}, 2));
  // Swapping improves both voters.
  CHECK_FALSE(pareto_optimal_bruteforce(fix_s(), Matching{{1, 0}}, 2));
  // v1 would rather hold a.
  CHECK_FALSE(pareto_optimal_bruteforce(fix_s(), Matching{{1, std::nullopt}}, 1));
  CHECK_THROWS_AS(pareto_optimal_bruteforce(gen_impartial_culture(6, 2, 1), Matching{std::vector<std::optional<Candidate>>(6)}, 0),
                  SizeLimitError);
}

TEST_CASE("n = m: criterion, core and serial-dictatorship construction agree") {
  std::mt19937_64 rng(707);
  std::size_t constructed = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    const auto p = gen_impartial_culture(n, n, rng());
    for (Candidate c = 0; c < n; ++c) {
      const bool holds = pareto_matching_criterion(p, c).holds;
      CHECK(holds == veto_core_member(p, c).member);
      const auto sd = pareto_matching_via_serial_dictatorship(p, c);
      if (!holds) {
        CHECK_FALSE(sd);
        continue;
      }
      if (!sd) continue;
      ++constructed;
      const auto& [order, matching] = *sd;
      const auto rp = reverse_profile(p);
      CHECK(matching.assignment == serial_dictatorship(rp, order, n - 1).assignment);
      for (const auto& a : matching.assignment) CHECK(a != std::optional<Candidate>(c));
      CHECK(pareto_optimal_bruteforce(rp, matching, n - 1));
    }
  }
  CHECK(constructed > 0);
}

TEST_CASE("equivalence audit") {
  SUBCASE("FIX-P flags the expected n != m divergence only") {
    const auto report = equivalence_audit({fix_p()});
    CHECK(report.instances == 1);
    CHECK(report.candidate_checks == 3);
    CHECK(report.flow_vs_veto == 0);
    CHECK(report.psc_vs_flow == 0);
    CHECK(report.discrepancies() == 0);
    // c3 mirrors c1.
    CHECK(report.pareto_divergences_n_ne_m == 2);
    REQUIRE(report.records.size() == 2);
    CHECK(report.records[0].candidate_name == "c1");
    CHECK(report.records[0].pareto == std::optional<bool>(true));
    CHECK_FALSE(report.records[0].veto_core);
    CHECK(format_audit_lines(report).find("expected (n != m)") != std::string::npos);
  }
  SUBCASE("exhaustive 3x3 family") {
    const auto family = exhaustive_family(3, 3);
    CHECK(family.size() == 216);
    const auto report = equivalence_audit(family);
    CHECK(report.candidate_checks == 648);
    CHECK(report.flow_vs_veto == 0);
    CHECK(report.pareto_discrepancies == 0);
    CHECK(report.empty_core == 0);
    CHECK(report.psc_vs_solid_veto == 0);
    CHECK(report.psc_vs_flow == 18);
  }
  SUBCASE("random family is reproducible") {
    const auto a = random_family(50, 6, 5, 11);
    const auto b = random_family(50, 6, 5, 11);
    REQUIRE(a.size() == 50);
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == b[k]);
    const auto report = equivalence_audit(a);
    CHECK(report.flow_vs_veto == 0);
    CHECK(report.empty_core == 0);
  }
}

TEST_CASE("fast checkers agree with brute force") {
  std::mt19937_64 rng(808);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + rng() % 10;
    const std::size_t m = 1 + rng() % 5;
    const auto p = gen_impartial_culture(n, m, rng());
    for (Candidate c = 0; c < m; ++c) {
      const auto v = veto_core_member(p, c);
      CHECK(v.member == veto_core_member_bruteforce(p, c));
      if (!v.member) CHECK(veto_witness_valid(p, c, *v.witness));
    }
    const auto w = CandidateSet::from_mask(m, rng() % (1ULL << m));
    CHECK(weak_psc_bruteforce(p, w, w.size()) == weak_psc_satisfied(p, w, w.size()).satisfied);
  }
}
