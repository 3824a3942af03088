#include "vetokit/flow.hpp"

#include "vetokit/errors.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace vetokit {

namespace {

/// Dinic max-flow over a small integer network. Arcs are stored in insertion
/// order, which fixes the augmenting order and therefore the witness.
class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t nodes) : adj_(nodes), level_(nodes), next_(nodes) {}

  void add_arc(std::size_t from, std::size_t to, std::int64_t cap) {
    adj_[from].push_back(arcs_.size());
    arcs_.push_back({to, cap});
    adj_[to].push_back(arcs_.size());
    arcs_.push_back({from, 0});
  }

  std::int64_t max_flow(std::size_t s, std::size_t t) {
    std::int64_t total = 0;
    while (bfs(s, t)) {
      std::fill(next_.begin(), next_.end(), 0);
      while (auto pushed = dfs(s, t, std::numeric_limits<std::int64_t>::max())) total += pushed;
    }
    return total;
  }

  /// Nodes reachable from s in the residual graph.
  std::vector<bool> residual_reachable(std::size_t s) const {
    std::vector<bool> seen(adj_.size(), false);
    std::queue<std::size_t> q;
    q.push(s);
    seen[s] = true;
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      for (auto a : adj_[u]) {
        if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
          seen[arcs_[a].to] = true;
          q.push(arcs_[a].to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    std::size_t to;
    std::int64_t cap;  // residual
  };

  bool bfs(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      for (auto a : adj_[u]) {
        if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
          level_[arcs_[a].to] = level_[u] + 1;
          q.push(arcs_[a].to);
        }
      }
    }
    return level_[t] >= 0;
  }

  std::int64_t dfs(std::size_t u, std::size_t t, std::int64_t limit) {
    if (u == t) return limit;
    for (auto& k = next_[u]; k < adj_[u].size(); ++k) {
      auto a = adj_[u][k];
      auto v = arcs_[a].to;
      if (arcs_[a].cap <= 0 || level_[v] != level_[u] + 1) continue;
      if (auto pushed = dfs(v, t, std::min(limit, arcs_[a].cap))) {
        arcs_[a].cap -= pushed;
        arcs_[a ^ 1].cap += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

// Node layout: source, voters, candidates, sink.
struct ScaledNetwork {
  FlowNetwork net;
  std::size_t source;
  std::size_t sink;
  std::int64_t flow;
};

ScaledNetwork solve_network(const DominationGraph& g) {
  const std::size_t n = g.voters();
  const std::size_t m = g.candidates();
  const auto nn = static_cast<std::int64_t>(n);
  const auto mm = static_cast<std::int64_t>(m);
  ScaledNetwork s{FlowNetwork(n + m + 2), 0, n + m + 1, 0};
  for (std::size_t i = 0; i < n; ++i) {
    s.net.add_arc(s.source, 1 + i, mm);
    for (auto c : g.edges[i].members()) s.net.add_arc(1 + i, 1 + n + c, nn * mm);
  }
  for (std::size_t c = 0; c < m; ++c) s.net.add_arc(1 + n + c, s.sink, nn);
  s.flow = s.net.max_flow(s.source, s.sink);
  return s;
}

}  // namespace

DominationGraph build_domination_graph(const PreferenceProfile& p, Candidate c) {
  if (c >= p.candidates()) throw std::invalid_argument("build_domination_graph: unknown candidate");
  DominationGraph g{c, p.candidates(), {}};
  g.edges.reserve(p.voters());
  for (Voter i = 0; i < p.voters(); ++i) {
    CandidateSet e(p.candidates());
    auto r = p.ranking(i);
    for (std::size_t k = p.position(i, c); k < r.size(); ++k) e.insert(r[k]);
    g.edges.push_back(std::move(e));
  }
  return g;
}

std::int64_t matching_flow_value(const DominationGraph& g) { return solve_network(g).flow; }

bool has_fractional_perfect_matching(const DominationGraph& g) {
  return matching_flow_value(g) ==
         static_cast<std::int64_t>(g.voters()) * static_cast<std::int64_t>(g.candidates());
}

CutWitness extract_deficiency_witness(const DominationGraph& g) {
  auto s = solve_network(g);
  const std::size_t n = g.voters();
  const std::size_t m = g.candidates();
  if (s.flow == static_cast<std::int64_t>(n * m)) {
    throw std::invalid_argument("extract_deficiency_witness: a fractional perfect matching exists");
  }
  const auto reach = s.net.residual_reachable(s.source);
  CutWitness w{VoterSet(n), CandidateSet(m)};
  for (std::size_t i = 0; i < n; ++i) {
    if (reach[1 + i]) {
      w.voters.insert(i);
      w.dominated |= g.edges[i];
    }
  }
  if (!witness_is_valid(g, w)) {
    throw std::logic_error("extract_deficiency_witness: min-cut witness failed its invariant");
  }
  return w;
}

bool witness_is_valid(const DominationGraph& g, const CutWitness& w) {
  if (w.voters.universe() != g.voters() || w.voters.empty()) return false;
  CandidateSet dom(g.candidates());
  for (auto i : w.voters.members()) dom |= g.edges[i];
  if (!(dom == w.dominated)) return false;
  return g.voters() * w.dominated.size() < g.candidates() * w.voters.size();
}

std::vector<std::optional<std::size_t>> max_bipartite_matching(
    const std::vector<std::vector<std::size_t>>& left_adjacency, std::size_t right_count) {
  const std::size_t left = left_adjacency.size();
  std::vector<std::optional<std::size_t>> match_left(left);
  std::vector<std::optional<std::size_t>> match_right(right_count);
  std::vector<std::size_t> visited(right_count, 0);
  std::size_t stamp = 0;

  // Kuhn's augmenting paths; iterative to keep deep instances off the stack.
  for (std::size_t root = 0; root < left; ++root) {
    ++stamp;
    struct Frame {
      std::size_t u;
      std::size_t k;
    };
    std::vector<Frame> stack{{root, 0}};
    std::vector<std::size_t> via;  // right vertex chosen at each depth
    bool found = false;
    while (!stack.empty() && !found) {
      auto& f = stack.back();
      const auto& adj = left_adjacency[f.u];
      if (f.k == adj.size()) {
        stack.pop_back();
        if (!via.empty()) via.pop_back();
        continue;
      }
      const auto v = adj[f.k++];
      if (v >= right_count) throw std::invalid_argument("max_bipartite_matching: right index out of range");
      if (visited[v] == stamp) continue;
      visited[v] = stamp;
      via.push_back(v);
      if (!match_right[v]) {
        found = true;
      } else {
        stack.push_back({*match_right[v], 0});
      }
    }
    if (found) {
      for (std::size_t d = 0; d < via.size(); ++d) {
        const auto u = stack[d].u;
        match_left[u] = via[d];
        match_right[via[d]] = u;
      }
    }
  }
  return match_left;
}

std::size_t matching_size(const std::vector<std::optional<std::size_t>>& matching) {
  return static_cast<std::size_t>(
      std::count_if(matching.begin(), matching.end(), [](const auto& x) { return x.has_value(); }));
}

bool hall_check_bruteforce(const DominationGraph& g) {
  const std::size_t n = g.voters();
  const std::size_t m = g.candidates();
  if (n > 20) throw SizeLimitError("hall_check_bruteforce: at most 20 voters");
  std::vector<unsigned long long> edge_masks;
  const bool small = m <= 64;
  if (small) {
    for (const auto& e : g.edges) {
      unsigned long long mask = 0;
      for (auto c : e.members()) mask |= 1ULL << c;
      edge_masks.push_back(mask);
    }
  }
  for (unsigned long long s = 1; s < (1ULL << n); ++s) {
    std::size_t dom = 0;
    if (small) {
      unsigned long long u = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if ((s >> i) & 1ULL) u |= edge_masks[i];
      }
      dom = static_cast<std::size_t>(__builtin_popcountll(u));
    } else {
      CandidateSet u(m);
      for (std::size_t i = 0; i < n; ++i) {
        if ((s >> i) & 1ULL) u |= g.edges[i];
      }
      dom = u.size();
    }
    const auto size = static_cast<std::size_t>(__builtin_popcountll(s));
    if (n * dom < m * size) return false;
  }
  return true;
}

}  // namespace vetokit
