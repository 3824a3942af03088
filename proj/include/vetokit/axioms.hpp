#pragma once

#include "vetokit/flow.hpp"
#include "vetokit/profile.hpp"
#include "vetokit/rules.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vetokit {

/// v(N') = ceil(m·|N'|/n) - 1
std::size_t veto_power(std::size_t coalition_size, std::size_t n, std::size_t m);

/// Voters that together veto c: each of them ranks every member of
/// `blocked_by` above c, and |blocked_by| >= m - v(voters).
struct VetoWitness {
  VoterSet voters;
  CandidateSet blocked_by;
};

struct VetoVerdict {
  bool member = false;
  std::optional<VetoWitness> witness;
};

bool veto_witness_valid(const PreferenceProfile& p, Candidate c, const VetoWitness& w);

/// Proportional veto core membership through the domination-graph flow on
/// the original (uncloned) profile. A non-member gets the min-cut voters as
/// witness, blocking with everything they all rank above c.
VetoVerdict veto_core_member(const PreferenceProfile& p, Candidate c);

CandidateSet veto_core(const PreferenceProfile& p);

/// Direct quantifier evaluation, computed two ways that must agree: over
/// every voter subset with its largest common above-c set (n <= 12, m <= 6),
/// and for n, m <= 4 additionally over every (voter set, candidate set)
/// pair. Throws SizeLimitError outside n <= 12, m <= 6; std::logic_error if
/// the two routes disagree.
bool veto_core_member_bruteforce(const PreferenceProfile& p, Candidate c);

/// The literal solid-coalition reading: some coalition's common prefix C'
/// (so C' ≻_{N'} C∖C') excludes c and |C'| >= m - v(N'). Strictly weaker
/// than being vetoed; kept for the equivalence audit.
bool vetoed_by_solid_coalition(const PreferenceProfile& p, Candidate c);

struct PscVerdict {
  bool satisfied = true;
  std::optional<SolidCoalition> violation;
};

/// Weak Droop PSC for committee W of size k: no solid coalition (C', N')
/// with |N'|·(k+1) > |C'|·n has C'∖W nonempty. Throws std::invalid_argument
/// if |W| != k.
PscVerdict weak_psc_satisfied(const PreferenceProfile& p, const CandidateSet& committee,
                              std::size_t k);

/// Exhaustive over every voter subset and every common prefix of it.
/// Throws SizeLimitError outside n <= 10, m <= 5.
bool weak_psc_bruteforce(const PreferenceProfile& p, const CandidateSet& committee, std::size_t k);

bool psc_violation_valid(const PreferenceProfile& p, const CandidateSet& committee, std::size_t k,
                         const SolidCoalition& violation);

struct ParetoCriterion {
  bool holds = false;
  /// Maximum matching using only edges (i, c') with c ≻_i c'.
  Matching witness;
};

/// Whether m-1 voters can each be matched to a distinct candidate they rank
/// below c in p (i.e. above c in the reversed profile).
ParetoCriterion pareto_matching_criterion(const PreferenceProfile& p, Candidate c);

/// Best effort: a serial-dictatorship order on reverse(p) whose first m-1
/// picks cover C∖{c}, with the resulting matching. Greedily fixes a voter
/// whose top remaining candidate keeps the rest completable. nullopt when
/// the criterion fails or the greedy gets stuck.
std::optional<std::pair<VetoOrder, Matching>> pareto_matching_via_serial_dictatorship(
    const PreferenceProfile& p, Candidate c);

/// Definition-level Pareto check of a size-k matching against every other
/// size-k matching, comparing in `p`. Throws SizeLimitError outside n, m <= 5.
bool pareto_optimal_bruteforce(const PreferenceProfile& p, const Matching& matching, std::size_t k);

struct AuditRecord {
  std::string instance;  // serialized profile
  Candidate candidate = 0;
  std::string candidate_name;
  bool fractional_matching = false;  // (i)
  bool veto_core = false;            // (ii), brute force
  bool weak_psc = false;             // (iii), reversed profile, W = C∖{c}
  std::optional<bool> pareto;        // computed for every instance
  bool solid_veto_core = false;      // not vetoed by any solid coalition
  std::string note;
};

struct AuditReport {
  std::size_t instances = 0;
  std::size_t candidate_checks = 0;
  /// (i) != (ii)
  std::size_t flow_vs_veto = 0;
  /// (iii) disagrees with (i) or (ii)
  std::size_t psc_vs_flow = 0;
  /// n = m instances where the Pareto criterion disagrees with (ii)
  std::size_t pareto_discrepancies = 0;
  std::size_t pareto_checked = 0;
  /// n != m instances where they disagree (not a discrepancy)
  std::size_t pareto_divergences_n_ne_m = 0;
  /// instances whose veto core came out empty
  std::size_t empty_core = 0;
  /// weak-PSC against the solid-coalition veto reading
  std::size_t psc_vs_solid_veto = 0;
  /// every (instance, candidate) with a disagreement or an expected divergence
  std::vector<AuditRecord> records;

  std::size_t discrepancies() const {
    return flow_vs_veto + psc_vs_flow + pareto_discrepancies + empty_core;
  }
};

/// Checks (i) flow matching, (ii) brute-force veto core and (iii) weak-PSC of
/// C∖{c} on the reversed profile for every candidate, plus the Pareto
/// matching criterion (asserted only when n = m). Never throws for
/// instances inside the brute-force bounds.
AuditReport equivalence_audit(const std::vector<PreferenceProfile>& family);

/// All (m!)^n profiles with default labels.
std::vector<PreferenceProfile> exhaustive_family(std::size_t n, std::size_t m);

/// `count` impartial-culture profiles with n in [1, nmax], m in [1, mmax].
std::vector<PreferenceProfile> random_family(std::size_t count, std::size_t nmax, std::size_t mmax,
                                             std::uint64_t seed);

/// One "key=value" line per record plus a summary line.
std::string format_audit_lines(const AuditReport& report);

}  // namespace vetokit
