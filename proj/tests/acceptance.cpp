// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance                 run every criterion
//   acceptance --criterion N   run one

#include "vetokit/axioms.hpp"
#include "vetokit/distortion.hpp"
#include "vetokit/eating.hpp"
#include "vetokit/flow.hpp"
#include "vetokit/io.hpp"
#include "vetokit/rules.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace vetokit;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

constexpr std::uint64_t kSeed = 20240601;

// Exhaustive n = m = 3 plus 5,000 random instances with n <= 6, m <= 5.
const std::vector<PreferenceProfile>& audit_family() {
  static const std::vector<PreferenceProfile> family = [] {
    auto f = exhaustive_family(3, 3);
    auto r = random_family(5000, 6, 5, kSeed);
    f.insert(f.end(), r.begin(), r.end());
    return f;
  }();
  return family;
}

PreferenceProfile fixture(std::string_view text) { return parse_profile(text); }

const char* kFixP = "3 4\nc1 c2 c3\nc1>c2>c3\nc1>c2>c3\nc3>c2>c1\nc3>c2>c1\n";
const char* kFixS = "2 2\na b\na>b\nb>a\n";
const char* kFixU = "2 2\na b\na>b\na>b\n";

Outcome equivalence() {
  const auto start = Clock::now();
  const auto report = equivalence_audit(audit_family());
  const double secs = seconds_since(start);
  std::ostringstream d;
  d << report.instances << " instances, " << report.candidate_checks << " checks; (i) vs (ii) "
    << report.flow_vs_veto << ", weak-PSC vs (i)/(ii) " << report.psc_vs_flow << "; " << secs << "s";
  return {report.flow_vs_veto == 0 && report.psc_vs_flow == 0 && secs < 120, d.str()};
}

Outcome nonempty() {
  std::size_t empty = 0;
  for (const auto& p : audit_family()) {
    if (plurality_matching_winners(p).empty()) ++empty;
  }
  return {empty == 0, std::to_string(audit_family().size()) + " instances, " + std::to_string(empty) + " empty"};
}

Outcome plurality_veto_membership() {
  const auto family = random_family(1000, 6, 5, kSeed + 3);
  std::mt19937_64 rng(kSeed + 4);
  std::size_t runs = 0, failures = 0;
  for (const auto& p : family) {
    const auto winners = plurality_matching_winners(p);
    for (int k = 0; k < 5; ++k) {
      ++runs;
      if (!winners.contains(plurality_veto(p, random_order(p.voters(), rng)))) ++failures;
    }
  }
  return {failures == 0, std::to_string(runs) + " runs, " + std::to_string(failures) + " failures"};
}

Outcome distortion_bound() {
  const auto start = Clock::now();
  const auto sweep = distortion_bound_sweep(random_family(200, 5, 5, kSeed + 5), 4, kSeed + 6);
  const double secs = seconds_since(start);
  std::ostringstream d;
  d << sweep.instances << " instances, " << sweep.checks << " winners, worst " << to_string(sweep.worst) << ", "
    << sweep.failures.size() << " failures; " << secs << "s";
  return {sweep.failures.empty() && secs < 600, d.str()};
}

Outcome classic_worst_case() {
  const auto s = fixture(kFixS);
  const auto u = fixture(kFixU);
  const auto sa = distortion_of_candidate(s, 0);
  const auto sb = distortion_of_candidate(s, 1);
  const auto ua = distortion_of_candidate(u, 0);
  const auto ub = distortion_of_candidate(u, 1);
  const bool ok = !sa.infinite && sa.value == 3 && !sb.infinite && sb.value == 3 && !ua.infinite && ua.value == 1 &&
                  ub.infinite;
  auto show = [](const DistortionResult& r) { return r.infinite ? std::string("inf") : to_string(r.value); };
  return {ok, "FIX-S a=" + show(sa) + " b=" + show(sb) + "; FIX-U a=" + show(ua) + " b=" + show(ub)};
}

Outcome pareto_counterexample() {
  const auto p = fixture(kFixP);
  const auto core = veto_core(p);
  const bool core_ok = core == CandidateSet(3, {1});
  const bool c1_criterion = pareto_matching_criterion(p, 0).holds;
  const bool c1_member = veto_core_member(p, 0).member;

  std::size_t checked = 0, disagreements = 0;
  for (const auto& q : audit_family()) {
    if (q.voters() != q.candidates()) continue;
    for (Candidate c = 0; c < q.candidates(); ++c) {
      ++checked;
      if (pareto_matching_criterion(q, c).holds != veto_core_member_bruteforce(q, c)) ++disagreements;
    }
  }
  std::ostringstream d;
  d << "FIX-P core {";
  for (auto c : core.members()) d << ' ' << p.name(c);
  d << " }, c1 criterion " << c1_criterion << " member " << c1_member << "; n = m checks " << checked
    << ", disagreements " << disagreements;
  return {core_ok && c1_criterion && !c1_member && disagreements == 0 && checked > 0, d.str()};
}

Outcome eating_claims() {
  std::size_t subset_failures = 0;
  for (const auto& p : audit_family()) {
    if (!veto_by_consumption_winners(p).is_subset_of(veto_core(p))) ++subset_failures;
  }

  std::size_t duality_failures = 0, ps_failures = 0, ps_runs = 0;
  for (const auto& p : random_family(1000, 6, 5, kSeed + 7)) {
    const auto reversed = reverse_profile(p);
    for (std::size_t k = 0; k <= p.candidates(); ++k) {
      EatingConfig cfg;
      cfg.direction = EatDirection::Worst;
      cfg.stop.after_eliminations = k;
      if (phragmen_committee(p, k) != run_eating(reversed, cfg).elimination_order()) ++duality_failures;
    }
    for (std::size_t k = 0; k <= std::min(p.voters(), p.candidates()); ++k) {
      ++ps_runs;
      const auto mu = probabilistic_serial(p, k).mu;
      Rational share(static_cast<long>(k), static_cast<long>(p.voters()));
      share.canonicalize();
      bool ok = true;
      for (const auto& row : mu) {
        Rational sum = 0;
        for (const auto& x : row) sum += x;
        ok = ok && sum == share;
      }
      for (Candidate c = 0; c < p.candidates(); ++c) {
        Rational col = 0;
        for (const auto& row : mu) col += row[c];
        ok = ok && col <= 1;
      }
      if (!ok) ++ps_failures;
    }
  }
  std::ostringstream d;
  d << "survivors outside core " << subset_failures << "; duality failures " << duality_failures
    << "; PS runs " << ps_runs << ", sum failures " << ps_failures;
  return {subset_failures == 0 && duality_failures == 0 && ps_failures == 0, d.str()};
}

Outcome oracle_equivalences() {
  auto family = exhaustive_family(3, 3);
  const auto r = random_family(1500, 10, 5, kSeed + 8);
  family.insert(family.end(), r.begin(), r.end());

  std::size_t veto = 0, psc = 0, hall = 0, veto_checks = 0, psc_checks = 0;
  for (const auto& p : family) {
    const std::size_t m = p.candidates();
    for (Candidate c = 0; c < m; ++c) {
      ++veto_checks;
      const bool fast = veto_core_member(p, c).member;
      if (fast != veto_core_member_bruteforce(p, c)) ++veto;
      const auto g = build_domination_graph(p, c);
      if (has_fractional_perfect_matching(g) != hall_check_bruteforce(g)) ++hall;
    }
    for (unsigned long long mask = 0; mask < (1ULL << m); ++mask) {
      ++psc_checks;
      const auto w = CandidateSet::from_mask(m, mask);
      if (weak_psc_satisfied(p, w, w.size()).satisfied != weak_psc_bruteforce(p, w, w.size())) ++psc;
    }
  }
  std::ostringstream d;
  d << family.size() << " instances; veto core " << veto << "/" << veto_checks << ", Hall " << hall << "/"
    << veto_checks << ", weak-PSC " << psc << "/" << psc_checks << " disagreements";
  return {veto == 0 && psc == 0 && hall == 0, d.str()};
}

Outcome certificate_integrity() {
  std::size_t finite = 0, infinite = 0, bad_finite = 0, bad_infinite = 0;
  for (const auto& p : random_family(200, 5, 5, kSeed + 9)) {
    for (Candidate c = 0; c < p.candidates(); ++c) {
      const auto r = distortion_of_candidate(p, c);
      if (r.infinite) {
        ++infinite;
        if (!verify_unbounded_certificate(p, c, r)) ++bad_infinite;
        continue;
      }
      ++finite;
      const bool ok = verify_certificate(p, c, r) &&
                      triangle_violations(extend_to_full_pseudometric(r.certificate, ExtensionCheck::None)) == 0;
      if (!ok) ++bad_finite;
    }
  }
  std::size_t witnesses = 0, bad_witnesses = 0;
  for (const auto& p : audit_family()) {
    for (Candidate c = 0; c < p.candidates(); ++c) {
      const auto g = build_domination_graph(p, c);
      if (has_fractional_perfect_matching(g)) continue;
      ++witnesses;
      const auto w = extract_deficiency_witness(g);
      // |dominated| < m·|voters|/n, cleared of fractions
      const bool strict = w.dominated.size() * p.voters() < p.candidates() * w.voters.size();
      if (!strict || !witness_is_valid(g, w)) ++bad_witnesses;
    }
  }
  std::ostringstream d;
  d << finite << " finite results, " << bad_finite << " bad; " << infinite << " unbounded, " << bad_infinite
    << " bad rays; " << witnesses << " cut witnesses, " << bad_witnesses << " bad";
  return {bad_finite == 0 && bad_infinite == 0 && bad_witnesses == 0 && finite > 0 && witnesses > 0, d.str()};
}

Outcome performance() {
  const auto big = gen_impartial_culture(200, 10, kSeed + 10);
  auto start = Clock::now();
  composite_distortion_rule(big);
  const double composite_secs = seconds_since(start);

  const auto square = gen_impartial_culture(10, 10, kSeed + 11);
  const auto lp = build_lp(square, 0, 1);
  start = Clock::now();
  const auto sol = solve_lp(lp);
  const double lp_secs = seconds_since(start);

  std::ostringstream d;
  d << "composite n=200: " << composite_secs << "s; LP " << lp.variables << " vars, " << lp.rows.size()
    << " rows: " << lp_secs << "s (value " << to_string(sol.value) << ")";
  return {composite_secs < 1 && lp.variables == 100 && sol.status == LpStatus::Optimal && lp_secs < 30, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-10)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<Outcome()>> criteria{
      equivalence,           nonempty,           plurality_veto_membership, distortion_bound, classic_worst_case,
      pareto_counterexample, eating_claims,      oracle_equivalences,       certificate_integrity, performance};

  bool all = true;
  for (int k = 1; k <= 10; ++k) {
    if (only != 0 && only != k) continue;
    Outcome o;
    try {
      o = criteria[k - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << k << ": " << (o.pass ? "PASS" : "FAIL") << " (" << o.detail << ")" << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
