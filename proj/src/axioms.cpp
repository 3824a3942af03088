#include "vetokit/axioms.hpp"

#include "vetokit/errors.hpp"
#include "vetokit/io.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace vetokit {

std::size_t veto_power(std::size_t coalition_size, std::size_t n, std::size_t m) {
  if (coalition_size == 0) return 0;
  return (m * coalition_size + n - 1) / n - 1;
}

namespace {

// Candidates voter i ranks strictly above c, as a bitmask (m <= 64).
unsigned long long above_mask(const PreferenceProfile& p, Voter i, Candidate c) {
  unsigned long long mask = 0;
  auto r = p.ranking(i);
  for (std::size_t k = 0; k < p.position(i, c); ++k) mask |= 1ULL << r[k];
  return mask;
}

int popcount(unsigned long long x) { return __builtin_popcountll(x); }

}  // namespace

bool veto_witness_valid(const PreferenceProfile& p, Candidate c, const VetoWitness& w) {
  const std::size_t n = p.voters();
  const std::size_t m = p.candidates();
  if (w.voters.universe() != n || w.blocked_by.universe() != m || w.voters.empty()) return false;
  if (w.blocked_by.contains(c)) return false;
  if (w.blocked_by.size() + veto_power(w.voters.size(), n, m) < m) return false;
  for (auto i : w.voters.members()) {
    for (auto b : w.blocked_by.members()) {
      if (!p.prefers(i, b, c)) return false;
    }
  }
  return true;
}

VetoVerdict veto_core_member(const PreferenceProfile& p, Candidate c) {
  const auto g = build_domination_graph(p, c);
  if (has_fractional_perfect_matching(g)) return {true, std::nullopt};
  const auto cut = extract_deficiency_witness(g);
  VetoWitness w{cut.voters, cut.dominated.complement()};
  if (!veto_witness_valid(p, c, w)) {
    throw std::logic_error("veto_core_member: cut witness does not veto the candidate");
  }
  return {false, std::move(w)};
}

CandidateSet veto_core(const PreferenceProfile& p) {
  CandidateSet core(p.candidates());
  for (Candidate c = 0; c < p.candidates(); ++c) {
    if (veto_core_member(p, c).member) core.insert(c);
  }
  return core;
}

bool veto_core_member_bruteforce(const PreferenceProfile& p, Candidate c) {
  const std::size_t n = p.voters();
  const std::size_t m = p.candidates();
  if (n > 12 || m > 6) throw SizeLimitError("veto_core_member_bruteforce: needs n <= 12, m <= 6");
  if (c >= m) throw std::invalid_argument("unknown candidate");

  std::vector<unsigned long long> above(n);
  for (Voter i = 0; i < n; ++i) above[i] = above_mask(p, i, c);

  // Route (a): per voter subset, the largest set they all rank above c.
  bool vetoed_a = false;
  for (unsigned long long s = 1; s < (1ULL << n) && !vetoed_a; ++s) {
    unsigned long long common = (1ULL << m) - 1;
    for (Voter i = 0; i < n; ++i) {
      if ((s >> i) & 1ULL) common &= above[i];
    }
    const auto v = veto_power(static_cast<std::size_t>(popcount(s)), n, m);
    if (static_cast<std::size_t>(popcount(common)) + v >= m) vetoed_a = true;
  }

  // Route (b): every (voter set, candidate set) pair.
  if (n <= 4 && m <= 4) {
    bool vetoed_b = false;
    for (unsigned long long s = 1; s < (1ULL << n) && !vetoed_b; ++s) {
      const auto v = veto_power(static_cast<std::size_t>(popcount(s)), n, m);
      for (unsigned long long cs = 0; cs < (1ULL << m) && !vetoed_b; ++cs) {
        if ((cs >> c) & 1ULL) continue;
        if (static_cast<std::size_t>(popcount(cs)) + v < m) continue;
        bool all_above = true;
        for (Voter i = 0; i < n && all_above; ++i) {
          if (!((s >> i) & 1ULL)) continue;
          for (Candidate b = 0; b < m; ++b) {
            if (((cs >> b) & 1ULL) && !p.prefers(i, b, c)) {
              all_above = false;
              break;
            }
          }
        }
        vetoed_b = all_above;
      }
    }
    if (vetoed_a != vetoed_b) {
      throw std::logic_error("veto_core_member_bruteforce: enumeration routes disagree");
    }
  }
  return !vetoed_a;
}

bool vetoed_by_solid_coalition(const PreferenceProfile& p, Candidate c) {
  const std::size_t n = p.voters();
  const std::size_t m = p.candidates();
  for (const auto& sc : solid_coalitions(p)) {
    if (sc.prefix_set.contains(c)) continue;
    if (sc.prefix_set.size() + veto_power(sc.supporters.size(), n, m) >= m) return true;
  }
  return false;
}

namespace {

bool droop_exceeded(std::size_t supporters, std::size_t prefix, std::size_t n, std::size_t k) {
  // |N'| > |C'|·n/(k+1), cross-multiplied.
  return supporters * (k + 1) > prefix * n;
}

}  // namespace

PscVerdict weak_psc_satisfied(const PreferenceProfile& p, const CandidateSet& committee,
                              std::size_t k) {
  if (committee.universe() != p.candidates()) {
    throw std::invalid_argument("weak_psc_satisfied: committee universe does not match profile");
  }
  if (committee.size() != k) throw std::invalid_argument("weak_psc_satisfied: |W| != k");
  for (auto& sc : solid_coalitions(p)) {
    if (!droop_exceeded(sc.supporters.size(), sc.prefix_set.size(), p.voters(), k)) continue;
    if ((sc.prefix_set - committee).empty()) continue;
    return {false, std::move(sc)};
  }
  return {true, std::nullopt};
}

bool weak_psc_bruteforce(const PreferenceProfile& p, const CandidateSet& committee, std::size_t k) {
  const std::size_t n = p.voters();
  const std::size_t m = p.candidates();
  if (n > 10 || m > 5) throw SizeLimitError("weak_psc_bruteforce: needs n <= 10, m <= 5");
  if (committee.size() != k) throw std::invalid_argument("weak_psc_bruteforce: |W| != k");
  unsigned long long w = 0;
  for (auto c : committee.members()) w |= 1ULL << c;

  std::vector<std::vector<unsigned long long>> prefix(n, std::vector<unsigned long long>(m + 1, 0));
  for (Voter i = 0; i < n; ++i) {
    auto r = p.ranking(i);
    for (std::size_t t = 1; t <= m; ++t) prefix[i][t] = prefix[i][t - 1] | (1ULL << r[t - 1]);
  }
  for (unsigned long long s = 1; s < (1ULL << n); ++s) {
    const auto size = static_cast<std::size_t>(popcount(s));
    const Voter first = static_cast<Voter>(__builtin_ctzll(s));
    for (std::size_t t = 1; t <= m; ++t) {
      const auto cs = prefix[first][t];
      bool solid = true;
      for (Voter i = 0; i < n && solid; ++i) {
        if (((s >> i) & 1ULL) && prefix[i][t] != cs) solid = false;
      }
      if (solid && droop_exceeded(size, t, n, k) && (cs & ~w) != 0) return false;
    }
  }
  return true;
}

bool psc_violation_valid(const PreferenceProfile& p, const CandidateSet& committee, std::size_t k,
                         const SolidCoalition& v) {
  const std::size_t t = v.prefix_set.size();
  if (v.supporters.empty() || t == 0) return false;
  for (auto i : v.supporters.members()) {
    auto r = p.ranking(i);
    for (std::size_t pos = 0; pos < t; ++pos) {
      if (!v.prefix_set.contains(r[pos])) return false;
    }
  }
  return droop_exceeded(v.supporters.size(), t, p.voters(), k) &&
         !(v.prefix_set - committee).empty();
}

namespace {

std::vector<std::vector<std::size_t>> below_adjacency(const PreferenceProfile& p, Candidate c,
                                                      const std::vector<bool>* voter_alive,
                                                      const CandidateSet* available) {
  std::vector<std::vector<std::size_t>> adj(p.voters());
  for (Voter i = 0; i < p.voters(); ++i) {
    if (voter_alive && !(*voter_alive)[i]) continue;
    auto r = p.ranking(i);
    for (std::size_t k = p.position(i, c) + 1; k < r.size(); ++k) {
      if (!available || available->contains(r[k])) adj[i].push_back(r[k]);
    }
  }
  return adj;
}

}  // namespace

ParetoCriterion pareto_matching_criterion(const PreferenceProfile& p, Candidate c) {
  if (c >= p.candidates()) throw std::invalid_argument("unknown candidate");
  const auto matching = max_bipartite_matching(below_adjacency(p, c, nullptr, nullptr), p.candidates());
  ParetoCriterion out;
  out.witness.assignment = matching;
  out.holds = matching_size(matching) + 1 >= p.candidates();
  return out;
}

std::optional<std::pair<VetoOrder, Matching>> pareto_matching_via_serial_dictatorship(
    const PreferenceProfile& p, Candidate c) {
  const std::size_t n = p.voters();
  const std::size_t m = p.candidates();
  if (!pareto_matching_criterion(p, c).holds) return std::nullopt;
  const auto reversed = reverse_profile(p);

  CandidateSet available = CandidateSet::full(m);
  available.erase(c);
  std::vector<bool> alive(n, true);
  VetoOrder sigma;
  Matching result{std::vector<std::optional<Candidate>>(n)};

  while (!available.empty()) {
    bool progressed = false;
    for (Voter u = 0; u < n && !progressed; ++u) {
      if (!alive[u]) continue;
      // u's favourite in the reversed profile among available ∪ {c}
      Candidate pick = c;
      for (Candidate x : reversed.ranking(u)) {
        if (x == c || available.contains(x)) {
          pick = x;
          break;
        }
      }
      if (pick == c) continue;
      alive[u] = false;
      available.erase(pick);
      const auto rest = max_bipartite_matching(below_adjacency(p, c, &alive, &available), m);
      if (matching_size(rest) == available.size()) {
        sigma.push_back(u);
        result.assignment[u] = pick;
        progressed = true;
      } else {
        alive[u] = true;
        available.insert(pick);
      }
    }
    if (!progressed) return std::nullopt;
  }
  for (Voter u = 0; u < n; ++u) {
    if (alive[u]) sigma.push_back(u);
  }
  const auto check = serial_dictatorship(reversed, sigma, m - 1);
  if (check.assignment != result.assignment) return std::nullopt;
  return std::make_pair(std::move(sigma), std::move(result));
}

bool pareto_optimal_bruteforce(const PreferenceProfile& p, const Matching& matching, std::size_t k) {
  const std::size_t n = p.voters();
  const std::size_t m = p.candidates();
  if (n > 5 || m > 5) throw SizeLimitError("pareto_optimal_bruteforce: needs n, m <= 5");
  if (matching.assignment.size() != n || matching.size() != k || !matching.is_injective()) {
    throw std::invalid_argument("pareto_optimal_bruteforce: not an injective matching of size k");
  }
  // Unmatched ranks below every candidate.
  auto rank_of = [&](Voter i, const std::optional<Candidate>& x) {
    return x ? p.position(i, *x) : m;
  };

  std::vector<std::optional<Candidate>> current(n);
  std::vector<bool> used(m, false);
  bool dominated = false;
  std::function<void(Voter, std::size_t)> search = [&](Voter i, std::size_t matched) {
    if (dominated) return;
    if (i == n) {
      if (matched != k) return;
      bool strict = false;
      for (Voter j = 0; j < n; ++j) {
        const auto mine = rank_of(j, current[j]);
        const auto theirs = rank_of(j, matching.assignment[j]);
        if (mine > theirs) return;
        if (mine < theirs) strict = true;
      }
      dominated = strict;
      return;
    }
    // Prune: a voter worse off than in `matching` rules the branch out.
    const auto base = rank_of(i, matching.assignment[i]);
    if (n - i > k - matched && base == m) {
      current[i].reset();
      search(i + 1, matched);
    }
    if (matched < k) {
      for (Candidate x = 0; x < m; ++x) {
        if (used[x] || p.position(i, x) > base) continue;
        used[x] = true;
        current[i] = x;
        search(i + 1, matched + 1);
        used[x] = false;
      }
      current[i].reset();
    }
  };
  search(0, 0);
  return !dominated;
}

AuditReport equivalence_audit(const std::vector<PreferenceProfile>& family) {
  AuditReport report;
  for (const auto& p : family) {
    ++report.instances;
    const std::size_t n = p.voters();
    const std::size_t m = p.candidates();
    const auto reversed = reverse_profile(p);
    bool any_member = false;
    bool skipped = false;
    for (Candidate c = 0; c < m; ++c) {
      AuditRecord rec;
      rec.candidate = c;
      rec.candidate_name = p.name(c);
      rec.fractional_matching = has_fractional_perfect_matching(build_domination_graph(p, c));
      try {
        rec.veto_core = veto_core_member_bruteforce(p, c);
      } catch (const SizeLimitError&) {
        skipped = true;
        rec.instance = serialize_profile(p);
        rec.note = "skipped: outside brute-force bounds";
        report.records.push_back(std::move(rec));
        continue;
      }
      ++report.candidate_checks;
      CandidateSet committee = CandidateSet::full(m);
      committee.erase(c);
      rec.weak_psc = weak_psc_satisfied(reversed, committee, m - 1).satisfied;
      rec.pareto = pareto_matching_criterion(p, c).holds;
      rec.solid_veto_core = !vetoed_by_solid_coalition(p, c);
      any_member = any_member || rec.veto_core;

      std::vector<std::string> notes;
      if (rec.fractional_matching != rec.veto_core) {
        ++report.flow_vs_veto;
        notes.push_back("flow/veto-core disagree");
      }
      if (rec.weak_psc != rec.fractional_matching || rec.weak_psc != rec.veto_core) {
        ++report.psc_vs_flow;
        notes.push_back("weak-PSC disagrees");
      }
      if (rec.weak_psc != rec.solid_veto_core) ++report.psc_vs_solid_veto;
      if (n == m) {
        ++report.pareto_checked;
        if (*rec.pareto != rec.veto_core) {
          ++report.pareto_discrepancies;
          notes.push_back("pareto criterion disagrees (n = m)");
        }
      } else if (*rec.pareto != rec.veto_core) {
        ++report.pareto_divergences_n_ne_m;
        notes.push_back("pareto criterion diverges: expected (n != m)");
      }
      if (!notes.empty()) {
        rec.instance = serialize_profile(p);
        std::ostringstream joined;
        for (std::size_t k = 0; k < notes.size(); ++k) joined << (k ? "; " : "") << notes[k];
        rec.note = joined.str();
        report.records.push_back(std::move(rec));
      }
    }
    if (!any_member && !skipped) ++report.empty_core;
  }
  return report;
}

std::vector<PreferenceProfile> exhaustive_family(std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw std::invalid_argument("exhaustive_family: n, m must be >= 1");
  std::vector<std::vector<Candidate>> perms;
  std::vector<Candidate> perm(m);
  std::iota(perm.begin(), perm.end(), Candidate{0});
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  double total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= static_cast<double>(perms.size());
  if (total > 2e6) throw SizeLimitError("exhaustive_family: more than 2e6 profiles");

  std::vector<PreferenceProfile> out;
  std::vector<std::size_t> digits(n, 0);
  while (true) {
    std::vector<std::vector<Candidate>> rankings;
    for (auto d : digits) rankings.push_back(perms[d]);
    out.push_back(PreferenceProfile::with_default_names(std::move(rankings)));
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++digits[pos] < perms.size()) break;
      digits[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

std::vector<PreferenceProfile> random_family(std::size_t count, std::size_t nmax, std::size_t mmax,
                                             std::uint64_t seed) {
  if (nmax == 0 || mmax == 0) throw std::invalid_argument("random_family: nmax, mmax must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_n(1, nmax);
  std::uniform_int_distribution<std::size_t> pick_m(1, mmax);
  std::vector<PreferenceProfile> out;
  out.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    const auto n = pick_n(rng);
    const auto m = pick_m(rng);
    out.push_back(gen_impartial_culture(n, m, rng()));
  }
  return out;
}

namespace {

std::string one_line(const std::string& profile_text) {
  std::string s = profile_text;
  while (!s.empty() && s.back() == '\n') s.pop_back();
  std::replace(s.begin(), s.end(), '\n', '|');
  return s;
}

}  // namespace

std::string format_audit_lines(const AuditReport& r) {
  std::ostringstream out;
  for (const auto& rec : r.records) {
    out << "record instance=\"" << one_line(rec.instance) << "\" candidate=" << rec.candidate_name
        << " flow=" << rec.fractional_matching << " veto_core=" << rec.veto_core
        << " weak_psc=" << rec.weak_psc << " pareto=" << (rec.pareto ? (*rec.pareto ? "1" : "0") : "-")
        << " solid_veto_core=" << rec.solid_veto_core << " note=\"" << rec.note << "\"\n";
  }
  out << "summary instances=" << r.instances << " checks=" << r.candidate_checks
      << " flow_vs_veto=" << r.flow_vs_veto << " psc_vs_flow=" << r.psc_vs_flow
      << " pareto_checked=" << r.pareto_checked << " pareto_discrepancies=" << r.pareto_discrepancies
      << " pareto_divergences_n_ne_m=" << r.pareto_divergences_n_ne_m
      << " empty_core=" << r.empty_core << " psc_vs_solid_veto=" << r.psc_vs_solid_veto
      << " discrepancies=" << r.discrepancies() << '\n';
  return out.str();
}

}  // namespace vetokit
