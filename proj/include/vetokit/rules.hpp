#pragma once

#include "vetokit/eating.hpp"
#include "vetokit/profile.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace vetokit {

/// Permutation of voter indices.
using VetoOrder = std::vector<Voter>;

/// Throws std::invalid_argument unless `order` is a permutation of {0..n-1}.
void validate_order(const VetoOrder& order, std::size_t n);
VetoOrder identity_order(std::size_t n);
VetoOrder random_order(std::size_t n, std::mt19937_64& rng);

/// Partial injective voter -> candidate assignment.
struct Matching {
  std::vector<std::optional<Candidate>> assignment;

  std::size_t size() const;
  bool is_injective() const;
};

/// Plurality Veto on the plurality-cloned instance: the first n-1 voters of
/// `order` each strike their lowest remaining clone; the surviving clone's
/// original is returned. An empty order means ascending voter index.
/// Candidates without first-place votes have no clones and can never win.
Candidate plurality_veto(const PreferenceProfile& p, const VetoOrder& order = {});

/// Original candidates having some clone whose domination graph in the
/// plurality-cloned instance admits a fractional perfect matching.
CandidateSet plurality_matching_winners(const PreferenceProfile& p);

/// Clone by plurality, run Phragmén on the reversed cloned profile for
/// k = n, and return the original of the last clone elected. This is the
/// candidate veto-by-consumption keeps to the end on the cloned profile.
/// `tie_break` orders original candidates; clones inherit that order.
Candidate composite_distortion_rule(const PreferenceProfile& p,
                                    const std::vector<Candidate>& tie_break = {});

/// Voters in `sigma` order take their best remaining candidate; stops after
/// k picks. Throws std::invalid_argument if k > min(n, m).
Matching serial_dictatorship(const PreferenceProfile& p, const VetoOrder& sigma, std::size_t k);

/// Empirical Random Priority: mean of serial dictatorship over `samples`
/// uniformly drawn orders.
FractionalAssignment random_priority(const PreferenceProfile& p, std::size_t k, std::uint64_t seed,
                                     std::size_t samples);

}  // namespace vetokit
