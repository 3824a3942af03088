#include "vetokit/rules.hpp"

#include "vetokit/flow.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace vetokit {

void validate_order(const VetoOrder& order, std::size_t n) {
  if (order.size() != n) throw std::invalid_argument("voter order must list every voter once");
  std::vector<bool> seen(n, false);
  for (auto v : order) {
    if (v >= n || seen[v]) throw std::invalid_argument("voter order is not a permutation");
    seen[v] = true;
  }
}

VetoOrder identity_order(std::size_t n) {
  VetoOrder o(n);
  std::iota(o.begin(), o.end(), Voter{0});
  return o;
}

VetoOrder random_order(std::size_t n, std::mt19937_64& rng) {
  auto o = identity_order(n);
  std::shuffle(o.begin(), o.end(), rng);
  return o;
}

std::size_t Matching::size() const {
  return static_cast<std::size_t>(std::count_if(assignment.begin(), assignment.end(),
                                                [](const auto& x) { return x.has_value(); }));
}

bool Matching::is_injective() const {
  std::vector<Candidate> used;
  for (const auto& a : assignment) {
    if (a) used.push_back(*a);
  }
  std::sort(used.begin(), used.end());
  return std::adjacent_find(used.begin(), used.end()) == used.end();
}

Candidate plurality_veto(const PreferenceProfile& p, const VetoOrder& order) {
  const VetoOrder o = order.empty() ? identity_order(p.voters()) : order;
  validate_order(o, p.voters());
  const auto cloned = clone_by_plurality(p);
  const auto& q = cloned.expanded;
  CandidateSet remaining = CandidateSet::full(q.candidates());
  for (std::size_t k = 0; k + 1 < o.size(); ++k) {
    remaining.erase(bottom_choice(q, o[k], remaining));
  }
  const auto last = remaining.members();
  // n voters, n clones, n-1 strikes.
  return cloned.origin[last.front()];
}

CandidateSet plurality_matching_winners(const PreferenceProfile& p) {
  const auto cloned = clone_by_plurality(p);
  CandidateSet winners(p.candidates());
  for (Candidate clone = 0; clone < cloned.expanded.candidates(); ++clone) {
    if (winners.contains(cloned.origin[clone])) continue;
    if (has_fractional_perfect_matching(build_domination_graph(cloned.expanded, clone))) {
      winners.insert(cloned.origin[clone]);
    }
  }
  return winners;
}

Candidate composite_distortion_rule(const PreferenceProfile& p,
                                    const std::vector<Candidate>& tie_break) {
  const auto cloned = clone_by_plurality(p);
  std::vector<Candidate> clone_tie;
  const std::vector<Candidate> base = tie_break.empty() ? identity_order(p.candidates()) : tie_break;
  validate_order(base, p.candidates());
  for (auto c : base) {
    clone_tie.insert(clone_tie.end(), cloned.clone_order[c].begin(), cloned.clone_order[c].end());
  }
  const auto reversed = reverse_profile(cloned.expanded);
  const auto elected = phragmen_committee(reversed, p.voters(), clone_tie);
  return cloned.origin[elected.back()];
}

Matching serial_dictatorship(const PreferenceProfile& p, const VetoOrder& sigma, std::size_t k) {
  validate_order(sigma, p.voters());
  if (k > std::min(p.voters(), p.candidates())) {
    throw std::invalid_argument("serial_dictatorship: k exceeds min(n, m)");
  }
  Matching out{std::vector<std::optional<Candidate>>(p.voters())};
  CandidateSet taken(p.candidates());
  for (std::size_t step = 0; step < k; ++step) {
    const Voter v = sigma[step];
    for (Candidate c : p.ranking(v)) {
      if (!taken.contains(c)) {
        taken.insert(c);
        out.assignment[v] = c;
        break;
      }
    }
  }
  return out;
}

FractionalAssignment random_priority(const PreferenceProfile& p, std::size_t k, std::uint64_t seed,
                                     std::size_t samples) {
  if (samples == 0) throw std::invalid_argument("random_priority: samples must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::size_t>> counts(p.voters(), std::vector<std::size_t>(p.candidates()));
  for (std::size_t s = 0; s < samples; ++s) {
    const auto m = serial_dictatorship(p, random_order(p.voters(), rng), k);
    for (Voter i = 0; i < p.voters(); ++i) {
      if (m.assignment[i]) ++counts[i][*m.assignment[i]];
    }
  }
  FractionalAssignment out{zero_matrix(p.voters(), p.candidates())};
  for (Voter i = 0; i < p.voters(); ++i) {
    for (Candidate c = 0; c < p.candidates(); ++c) {
      out.mu[i][c] = Rational(counts[i][c], samples);
      out.mu[i][c].canonicalize();
    }
  }
  return out;
}

}  // namespace vetokit
