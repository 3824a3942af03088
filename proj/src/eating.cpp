#include "vetokit/eating.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace vetokit {

std::vector<Candidate> EatingTrace::elimination_order() const {
  std::vector<Candidate> out;
  for (const auto& e : events) out.insert(out.end(), e.eliminated.begin(), e.eliminated.end());
  return out;
}

std::vector<Rational> EatingTrace::absorbed() const {
  std::vector<Rational> col(consumption.empty() ? 0 : consumption.front().size());
  for (const auto& row : consumption) {
    for (std::size_t c = 0; c < row.size(); ++c) col[c] += row[c];
  }
  return col;
}

namespace {

std::vector<std::size_t> tie_rank(std::size_t m, const std::vector<Candidate>& tie_break) {
  std::vector<std::size_t> rank(m);
  if (tie_break.empty()) {
    std::iota(rank.begin(), rank.end(), std::size_t{0});
    return rank;
  }
  if (tie_break.size() != m) throw std::invalid_argument("tie_break must order every candidate");
  std::vector<bool> seen(m, false);
  for (std::size_t k = 0; k < m; ++k) {
    const auto c = tie_break[k];
    if (c >= m || seen[c]) throw std::invalid_argument("tie_break is not a permutation");
    seen[c] = true;
    rank[c] = k;
  }
  return rank;
}

}  // namespace

EatingTrace run_eating(const PreferenceProfile& p, const EatingConfig& config) {
  // Equality tests below need canonical fractions.
  EatingConfig cfg = config;
  cfg.capacity.canonicalize();
  if (cfg.stop.at_time) cfg.stop.at_time->canonicalize();
  const std::size_t n = p.voters();
  const std::size_t m = p.candidates();
  if (sgn(cfg.capacity) <= 0) throw std::invalid_argument("capacity must be positive");
  if (cfg.stop.at_time && sgn(*cfg.stop.at_time) < 0) {
    throw std::invalid_argument("stop time must be nonnegative");
  }
  if (cfg.stop.after_eliminations && *cfg.stop.after_eliminations > m) {
    throw std::invalid_argument("cannot eliminate more candidates than exist");
  }
  const auto rank = tie_rank(m, cfg.tie_break);
  const std::size_t want = cfg.stop.after_eliminations.value_or(m);
  const bool best = cfg.direction == EatDirection::Best;

  EatingTrace trace{{}, zero_matrix(n, m), CandidateSet::full(m), 0};
  std::vector<Rational> absorbed(m);
  // Per-voter cursor into its ranking; only ever moves toward the middle.
  std::vector<std::size_t> cursor(n, best ? 0 : m - 1);
  std::vector<Candidate> target(n);
  std::vector<std::size_t> eaters(m, 0);
  std::size_t eliminated = 0;
  Rational& now = trace.elapsed;

  while (eliminated < want) {
    if (cfg.stop.at_time && now == *cfg.stop.at_time) break;

    std::fill(eaters.begin(), eaters.end(), 0);
    for (Voter i = 0; i < n; ++i) {
      auto r = p.ranking(i);
      while (!trace.survivors.contains(r[cursor[i]])) best ? ++cursor[i] : --cursor[i];
      target[i] = r[cursor[i]];
      ++eaters[target[i]];
    }

    std::optional<Rational> step;
    for (Candidate c = 0; c < m; ++c) {
      if (eaters[c] == 0) continue;
      Rational dt = (cfg.capacity - absorbed[c]) / eaters[c];
      if (!step || dt < *step) step = dt;
    }
    bool truncated = false;
    if (cfg.stop.at_time && now + *step > *cfg.stop.at_time) {
      step = *cfg.stop.at_time - now;
      truncated = true;
    }

    for (Voter i = 0; i < n; ++i) trace.consumption[i][target[i]] += *step;
    for (Candidate c = 0; c < m; ++c) {
      if (eaters[c]) absorbed[c] += *step * eaters[c];
    }
    now += *step;
    if (truncated) break;

    std::vector<Candidate> batch;
    for (Candidate c = 0; c < m; ++c) {
      if (eaters[c] && absorbed[c] == cfg.capacity) batch.push_back(c);
    }
    std::sort(batch.begin(), batch.end(), [&](Candidate a, Candidate b) { return rank[a] < rank[b]; });
    if (batch.size() > want - eliminated) batch.resize(want - eliminated);
    for (auto c : batch) trace.survivors.erase(c);
    eliminated += batch.size();
    trace.events.push_back({now, std::move(batch)});

    if (eliminated == m && cfg.stop.at_time && now < *cfg.stop.at_time) {
      throw std::invalid_argument("stop time " + to_string(*cfg.stop.at_time) +
                                  " exceeds the exhaustion time " + to_string(now));
    }
  }
  return trace;
}

std::string format_trace(const PreferenceProfile& p, const EatingTrace& trace) {
  std::ostringstream out;
  for (const auto& e : trace.events) {
    out << '(' << to_string(e.time) << ',';
    for (auto c : e.eliminated) out << ' ' << p.name(c);
    out << ")\n";
  }
  return out.str();
}

CandidateSet veto_by_consumption_winners(const PreferenceProfile& p) {
  const std::size_t m = p.candidates();
  EatingConfig cfg;
  cfg.direction = EatDirection::Worst;
  const auto trace = run_eating(p, cfg);
  // With no stop rule every candidate is eventually consumed; whoever goes
  // in the last event outlasted everyone else. If the run left a single
  // candidate before that, it is that last event's sole member.
  CandidateSet winners(m);
  for (auto c : trace.events.back().eliminated) winners.insert(c);
  return winners;
}

std::vector<Candidate> phragmen_committee(const PreferenceProfile& p, std::size_t k,
                                          const std::vector<Candidate>& tie_break) {
  if (k > p.candidates()) throw std::invalid_argument("phragmen_committee: k exceeds m");
  EatingConfig cfg;
  cfg.direction = EatDirection::Best;
  cfg.stop.after_eliminations = k;
  cfg.tie_break = tie_break;
  return run_eating(p, cfg).elimination_order();
}

FractionalAssignment probabilistic_serial(const PreferenceProfile& p, std::size_t k) {
  if (k > p.candidates()) throw std::invalid_argument("probabilistic_serial: k exceeds m");
  EatingConfig cfg;
  cfg.direction = EatDirection::Best;
  cfg.stop.at_time = Rational(k, p.voters());
  cfg.stop.at_time->canonicalize();
  return {run_eating(p, cfg).consumption};
}

}  // namespace vetokit
