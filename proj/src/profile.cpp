#include "vetokit/profile.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace vetokit {

bool is_valid_label(std::string_view label) {
  if (label.empty()) return false;
  return std::none_of(label.begin(), label.end(), [](char ch) {
    return ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '>' || ch == ',' ||
           ch == ':' || ch == '#';
  });
}

PreferenceProfile::PreferenceProfile(std::vector<std::string> names,
                                     std::vector<std::vector<Candidate>> rankings)
    : n_(rankings.size()), m_(names.size()), names_(std::move(names)) {
  if (n_ == 0) throw std::invalid_argument("profile needs at least one voter");
  if (m_ == 0) throw std::invalid_argument("profile needs at least one candidate");
  std::set<std::string_view> seen;
  for (const auto& label : names_) {
    if (!is_valid_label(label)) {
      throw std::invalid_argument("invalid candidate label '" + label + "'");
    }
    if (!seen.insert(label).second) {
      throw std::invalid_argument("duplicate candidate label '" + label + "'");
    }
  }
  order_.reserve(n_ * m_);
  pos_.assign(n_ * m_, m_);
  for (std::size_t i = 0; i < n_; ++i) {
    const auto& r = rankings[i];
    if (r.size() != m_) {
      throw std::invalid_argument("ranking of voter " + std::to_string(i + 1) + " has " +
                                  std::to_string(r.size()) + " entries, expected " +
                                  std::to_string(m_));
    }
    for (std::size_t k = 0; k < m_; ++k) {
      const Candidate c = r[k];
      if (c >= m_ || pos_[i * m_ + c] != m_) {
        throw std::invalid_argument("ranking of voter " + std::to_string(i + 1) +
                                    " is not a permutation");
      }
      pos_[i * m_ + c] = k;
      order_.push_back(c);
    }
  }
}

PreferenceProfile PreferenceProfile::with_default_names(
    std::vector<std::vector<Candidate>> rankings) {
  const std::size_t m = rankings.empty() ? 0 : rankings.front().size();
  std::vector<std::string> names;
  for (std::size_t c = 0; c < m; ++c) names.push_back("c" + std::to_string(c + 1));
  return PreferenceProfile(std::move(names), std::move(rankings));
}

std::optional<Candidate> PreferenceProfile::find(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<Candidate>(it - names_.begin());
}

std::vector<std::vector<Candidate>> PreferenceProfile::rankings() const {
  std::vector<std::vector<Candidate>> out;
  out.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    auto r = ranking(i);
    out.emplace_back(r.begin(), r.end());
  }
  return out;
}

PreferenceProfile reverse_profile(const PreferenceProfile& p) {
  auto rankings = p.rankings();
  for (auto& r : rankings) std::reverse(r.begin(), r.end());
  return PreferenceProfile(p.names(), std::move(rankings));
}

std::vector<std::size_t> plurality_scores(const PreferenceProfile& p) {
  std::vector<std::size_t> scores(p.candidates(), 0);
  for (Voter i = 0; i < p.voters(); ++i) ++scores[p.top(i)];
  return scores;
}

Candidate bottom_choice(const PreferenceProfile& p, Voter voter, const CandidateSet& remaining) {
  auto r = p.ranking(voter);
  for (auto it = r.rbegin(); it != r.rend(); ++it) {
    if (remaining.contains(*it)) return *it;
  }
  throw std::invalid_argument("bottom_choice: remaining candidate set is empty");
}

namespace {

std::vector<std::string> clone_labels(const PreferenceProfile& p,
                                      std::span<const std::size_t> frequency,
                                      const std::string& separator) {
  std::vector<std::string> labels;
  for (Candidate c = 0; c < p.candidates(); ++c) {
    for (std::size_t k = 1; k <= frequency[c]; ++k) {
      labels.push_back(p.name(c) + separator + std::to_string(k));
    }
  }
  return labels;
}

}  // namespace

CloneExpansion clone_expand(const PreferenceProfile& p, std::span<const std::size_t> frequency) {
  const std::size_t m = p.candidates();
  if (frequency.size() != m) {
    throw std::invalid_argument("clone_expand: frequency map has wrong length");
  }
  std::vector<Candidate> origin;
  std::vector<std::vector<Candidate>> clone_order(m);
  for (Candidate c = 0; c < m; ++c) {
    for (std::size_t k = 0; k < frequency[c]; ++k) {
      clone_order[c].push_back(origin.size());
      origin.push_back(c);
    }
  }
  if (origin.empty()) throw std::invalid_argument("clone_expand: all frequencies are zero");

  std::vector<std::vector<Candidate>> rankings;
  rankings.reserve(p.voters());
  for (Voter i = 0; i < p.voters(); ++i) {
    std::vector<Candidate> r;
    r.reserve(origin.size());
    for (Candidate c : p.ranking(i)) {
      r.insert(r.end(), clone_order[c].begin(), clone_order[c].end());
    }
    rankings.push_back(std::move(r));
  }

  // "a1" style labels unless they collide with each other, then "a.1".
  auto labels = clone_labels(p, frequency, "");
  std::set<std::string> unique(labels.begin(), labels.end());
  if (unique.size() != labels.size()) labels = clone_labels(p, frequency, ".");

  return CloneExpansion{std::vector<std::size_t>(frequency.begin(), frequency.end()),
                        PreferenceProfile(std::move(labels), std::move(rankings)),
                        std::move(origin), std::move(clone_order)};
}

CloneExpansion clone_by_plurality(const PreferenceProfile& p) {
  const auto scores = plurality_scores(p);
  return clone_expand(p, scores);
}

CandidateSet dominated_set(const PreferenceProfile& p, Candidate c, const VoterSet& voters) {
  if (voters.empty()) throw std::invalid_argument("dominated_set: empty voter set");
  CandidateSet out(p.candidates());
  for (Voter i : voters.members()) {
    auto r = p.ranking(i);
    for (std::size_t k = p.position(i, c); k < r.size(); ++k) out.insert(r[k]);
  }
  return out;
}

std::vector<SolidCoalition> solid_coalitions(const PreferenceProfile& p) {
  const std::size_t n = p.voters();
  const std::size_t m = p.candidates();
  std::vector<SolidCoalition> out;
  for (std::size_t len = 1; len <= m; ++len) {
    std::vector<CandidateSet> prefixes;
    prefixes.reserve(n);
    for (Voter i = 0; i < n; ++i) {
      CandidateSet s(m);
      auto r = p.ranking(i);
      for (std::size_t k = 0; k < len; ++k) s.insert(r[k]);
      prefixes.push_back(std::move(s));
    }
    std::vector<bool> assigned(n, false);
    for (Voter i = 0; i < n; ++i) {
      if (assigned[i]) continue;
      VoterSet supporters(n);
      for (Voter j = i; j < n; ++j) {
        if (!assigned[j] && prefixes[j] == prefixes[i]) {
          supporters.insert(j);
          assigned[j] = true;
        }
      }
      out.push_back({prefixes[i], std::move(supporters)});
    }
  }
  return out;
}

}  // namespace vetokit
