#pragma once

#include "vetokit/profile.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace vetokit {

/// G(c): voter i is adjacent to c' iff c ⪰_i c'.
struct DominationGraph {
  Candidate center = 0;
  std::size_t candidate_count = 0;
  std::vector<CandidateSet> edges;  // per voter

  std::size_t voters() const { return edges.size(); }
  std::size_t candidates() const { return candidate_count; }
};

DominationGraph build_domination_graph(const PreferenceProfile& p, Candidate c);

/// A voter set violating the fractional Hall condition:
/// |dominated| < m·|voters|/n, with dominated = D_c(voters).
struct CutWitness {
  VoterSet voters;
  CandidateSet dominated;
};

/// Max-flow value of the integer-scaled network
///   source -> voter (cap m), voter -> candidate on edges (cap n·m),
///   candidate -> sink (cap n).
/// A fractional perfect matching exists iff the value is n·m.
std::int64_t matching_flow_value(const DominationGraph& g);

bool has_fractional_perfect_matching(const DominationGraph& g);

/// Source side of a minimum cut, restricted to voters. Throws
/// std::invalid_argument when a fractional perfect matching exists.
CutWitness extract_deficiency_witness(const DominationGraph& g);

/// Checks the witness on its own terms: nonempty, dominated equals the union
/// of the voters' edge sets, and n·|dominated| < m·|voters|.
bool witness_is_valid(const DominationGraph& g, const CutWitness& w);

/// Maximum-cardinality matching, left -> right. Deterministic for a given
/// adjacency order.
std::vector<std::optional<std::size_t>> max_bipartite_matching(
    const std::vector<std::vector<std::size_t>>& left_adjacency, std::size_t right_count);

std::size_t matching_size(const std::vector<std::optional<std::size_t>>& matching);

/// Evaluates |D_c(N')| >= m|N'|/n over every nonempty voter subset. Throws
/// SizeLimitError for more than 20 voters.
bool hall_check_bruteforce(const DominationGraph& g);

}  // namespace vetokit
