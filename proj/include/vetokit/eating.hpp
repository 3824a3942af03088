#pragma once

#include "vetokit/profile.hpp"
#include "vetokit/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vetokit {

enum class EatDirection { Best, Worst };

/// When both are set the run ends at whichever triggers first. Eliminations
/// happening exactly at `at_time` are still applied. With neither set the
/// run continues until every candidate is consumed.
struct StopRule {
  std::optional<Rational> at_time;
  std::optional<std::size_t> after_eliminations;
};

struct EatingConfig {
  EatDirection direction = EatDirection::Worst;
  Rational capacity = 1;
  StopRule stop;
  /// Order used inside a batch of simultaneous eliminations. Empty means
  /// ascending candidate index; otherwise a permutation of the candidates.
  std::vector<Candidate> tie_break;
};

struct EatingEvent {
  Rational time;
  std::vector<Candidate> eliminated;  // in tie-break order
};

struct EatingTrace {
  std::vector<EatingEvent> events;
  RationalMatrix consumption;  // voter x candidate
  CandidateSet survivors;
  Rational elapsed;

  std::vector<Candidate> elimination_order() const;
  /// Column sums of `consumption`.
  std::vector<Rational> absorbed() const;
};

/// Continuous consumption: every voter eats its best (or worst) remaining
/// candidate at rate 1; a candidate is eliminated once it has absorbed
/// `capacity`. Exact event-driven simulation.
///
/// Throws std::invalid_argument for a negative stop time, non-positive
/// capacity, a bad tie-break order, more than m requested eliminations, or a
/// stop time later than the moment every candidate is consumed.
EatingTrace run_eating(const PreferenceProfile& p, const EatingConfig& cfg);

/// One "(t, name name ...)" record per event, newline separated.
std::string format_trace(const PreferenceProfile& p, const EatingTrace& trace);

/// Veto by consumption: eat-worst with unit capacity until at most one
/// candidate is left. The winners are the candidates removed by the final
/// event, i.e. the last ones standing; usually a single candidate.
CandidateSet veto_by_consumption_winners(const PreferenceProfile& p);

/// Phragmén's sequential ordinal rule: the first k candidates exhausted when
/// voters eat their best remaining candidate, in elimination order.
std::vector<Candidate> phragmen_committee(const PreferenceProfile& p, std::size_t k,
                                          const std::vector<Candidate>& tie_break = {});

struct FractionalAssignment {
  RationalMatrix mu;  // voter x candidate
};

/// Probabilistic Serial truncated at time k/n.
FractionalAssignment probabilistic_serial(const PreferenceProfile& p, std::size_t k);

}  // namespace vetokit
