#pragma once

#include "vetokit/index_set.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vetokit {

/// n strict, complete rankings over m labelled candidates. Immutable after
/// construction; rankings list candidate indices from best to worst.
class PreferenceProfile {
 public:
  /// Throws std::invalid_argument unless every ranking is a permutation of
  /// {0..m-1}, n >= 1, m >= 1, and labels are unique, non-empty tokens.
  PreferenceProfile(std::vector<std::string> names, std::vector<std::vector<Candidate>> rankings);

  /// Candidates labelled c1..cm.
  static PreferenceProfile with_default_names(std::vector<std::vector<Candidate>> rankings);

  std::size_t voters() const { return n_; }
  std::size_t candidates() const { return m_; }

  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Candidate c) const { return names_.at(c); }
  std::optional<Candidate> find(std::string_view name) const;

  std::span<const Candidate> ranking(Voter i) const {
    return {order_.data() + i * m_, m_};
  }
  /// 0 = best.
  std::size_t position(Voter i, Candidate c) const { return pos_[i * m_ + c]; }
  /// a ≻_i b
  bool prefers(Voter i, Candidate a, Candidate b) const { return position(i, a) < position(i, b); }
  Candidate top(Voter i) const { return order_[i * m_]; }
  Candidate bottom(Voter i) const { return order_[i * m_ + m_ - 1]; }

  std::vector<std::vector<Candidate>> rankings() const;

  friend bool operator==(const PreferenceProfile& a, const PreferenceProfile& b) {
    return a.names_ == b.names_ && a.order_ == b.order_;
  }

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::string> names_;
  std::vector<Candidate> order_;
  std::vector<std::size_t> pos_;
};

/// Candidate labels accepted at the I/O boundary: non-empty, no whitespace,
/// no '>', ',', ':' or '#'.
bool is_valid_label(std::string_view label);

PreferenceProfile reverse_profile(const PreferenceProfile& p);

std::vector<std::size_t> plurality_scores(const PreferenceProfile& p);

/// The member of `remaining` the voter ranks last. Throws on an empty set.
Candidate bottom_choice(const PreferenceProfile& p, Voter voter, const CandidateSet& remaining);

/// (N, C^f, ≻^f): each candidate c replaced by f(c) contiguous clones.
struct CloneExpansion {
  std::vector<std::size_t> frequency;
  PreferenceProfile expanded;
  /// clone -> original candidate
  std::vector<Candidate> origin;
  /// original candidate -> its clones, in the fixed within-block order
  std::vector<std::vector<Candidate>> clone_order;
};

/// Throws std::invalid_argument if f has the wrong length or sums to zero.
CloneExpansion clone_expand(const PreferenceProfile& p, std::span<const std::size_t> frequency);
CloneExpansion clone_by_plurality(const PreferenceProfile& p);

/// D_c(N'): candidates some voter of N' ranks no higher than c. Throws on an
/// empty voter set.
CandidateSet dominated_set(const PreferenceProfile& p, Candidate c, const VoterSet& voters);

/// A set that is the common top-|prefix_set| set of every supporter; the
/// supporter set is maximal.
struct SolidCoalition {
  CandidateSet prefix_set;
  VoterSet supporters;
};

/// All distinct prefix sets occurring in the profile, each with its maximal
/// supporter set. Ordered by prefix length, then first occurrence.
std::vector<SolidCoalition> solid_coalitions(const PreferenceProfile& p);

}  // namespace vetokit
