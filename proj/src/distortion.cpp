#include "vetokit/distortion.hpp"

#include "vetokit/errors.hpp"
#include "vetokit/io.hpp"
#include "vetokit/rules.hpp"

#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace vetokit {

LinearProgram build_lp(const PreferenceProfile& p, Candidate c, Candidate cref) {
  const std::size_t n = p.voters();
  const std::size_t m = p.candidates();
  if (c >= m || cref >= m) throw std::invalid_argument("build_lp: unknown candidate");
  LinearProgram lp;
  lp.variables = n * m;
  lp.objective.assign(n * m, 0);
  for (Voter i = 0; i < n; ++i) lp.objective[distance_var(i, c, m)] = 1;

  for (Voter i = 0; i < n; ++i) {
    auto r = p.ranking(i);
    for (std::size_t k = 0; k + 1 < m; ++k) {
      lp.rows.push_back({{{distance_var(i, r[k], m), 1}, {distance_var(i, r[k + 1], m), -1}},
                         RowSense::LessEqual,
                         0});
    }
  }
  for (Voter i = 0; i < n; ++i) {
    for (Voter j = 0; j < n; ++j) {
      for (Candidate a = 0; a < m; ++a) {
        for (Candidate b = 0; b < m; ++b) {
          lp.rows.push_back({{{distance_var(i, a, m), 1},
                              {distance_var(i, b, m), -1},
                              {distance_var(j, b, m), -1},
                              {distance_var(j, a, m), -1}},
                             RowSense::LessEqual,
                             0});
        }
      }
    }
  }
  LpRow norm;
  norm.sense = RowSense::Equal;
  norm.rhs = 1;
  for (Voter i = 0; i < n; ++i) norm.terms.push_back({distance_var(i, cref, m), 1});
  lp.rows.push_back(std::move(norm));
  return lp;
}

namespace {

DistanceMatrix reshape(const std::vector<Rational>& x, std::size_t n, std::size_t m) {
  DistanceMatrix dm{zero_matrix(n, m)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < m; ++a) dm.d[i][a] = x[distance_var(i, a, m)];
  }
  return dm;
}

DistanceMatrix uniform_point(std::size_t n, std::size_t m) {
  Rational u(1, n);
  u.canonicalize();
  return {RationalMatrix(n, std::vector<Rational>(m, u))};
}

bool shape_ok(const PreferenceProfile& p, const DistanceMatrix& dm) {
  if (dm.d.size() != p.voters()) return false;
  for (const auto& row : dm.d) {
    if (row.size() != p.candidates()) return false;
  }
  return true;
}

Rational column_sum(const DistanceMatrix& dm, Candidate a) {
  Rational s = 0;
  for (const auto& row : dm.d) s += row[a];
  return s;
}

bool quadrangles_hold(const RationalMatrix& d) {
  const std::size_t n = d.size();
  const std::size_t m = n ? d.front().size() : 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
          if (d[i][a] > d[i][b] + d[j][b] + d[j][a]) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

DistortionResult distortion_of_candidate(const PreferenceProfile& p, Candidate c,
                                         std::size_t max_variables) {
  const std::size_t n = p.voters();
  const std::size_t m = p.candidates();
  if (c >= m) throw std::invalid_argument("distortion_of_candidate: unknown candidate");
  if (n * m > max_variables) {
    throw SizeLimitError("distortion LP needs " + std::to_string(n * m) +
                         " variables, cap is " + std::to_string(max_variables));
  }
  DistortionResult best;
  if (m == 1) {
    best.value = 1;
    best.reference = c;
    best.certificate = uniform_point(n, m);
    return best;
  }
  bool have = false;
  for (Candidate cref = 0; cref < m; ++cref) {
    if (cref == c) continue;
    const auto lp = build_lp(p, c, cref);
    const auto sol = solve_lp(lp);
    best.lp_pivots += sol.pivots;
    if (sol.status == LpStatus::Infeasible) {
      throw std::logic_error("distortion LP reported infeasible; uniform distances are feasible");
    }
    if (sol.status == LpStatus::Unbounded) {
      best.infinite = true;
      best.value = 0;
      best.reference = cref;
      best.certificate = uniform_point(n, m);
      best.ray = reshape(sol.ray, n, m);
      return best;
    }
    if (!have || sol.value > best.value) {
      have = true;
      best.value = sol.value;
      best.reference = cref;
      best.certificate = reshape(sol.x, n, m);
    }
  }
  return best;
}

bool distance_matrix_valid(const PreferenceProfile& p, const DistanceMatrix& dm) {
  if (!shape_ok(p, dm)) return false;
  for (Voter i = 0; i < p.voters(); ++i) {
    for (const auto& x : dm.d[i]) {
      if (sgn(x) < 0) return false;
    }
    auto r = p.ranking(i);
    for (std::size_t k = 0; k + 1 < r.size(); ++k) {
      if (dm.d[i][r[k]] > dm.d[i][r[k + 1]]) return false;
    }
  }
  return quadrangles_hold(dm.d);
}

bool verify_certificate(const PreferenceProfile& p, Candidate c, const DistortionResult& result) {
  if (result.infinite || c >= p.candidates() || result.reference >= p.candidates()) return false;
  if (!distance_matrix_valid(p, result.certificate)) return false;
  return column_sum(result.certificate, result.reference) == 1 &&
         column_sum(result.certificate, c) == result.value;
}

bool verify_unbounded_certificate(const PreferenceProfile& p, Candidate c,
                                  const DistortionResult& result) {
  if (!result.infinite || !result.ray || c >= p.candidates() ||
      result.reference >= p.candidates() || result.reference == c) {
    return false;
  }
  if (!distance_matrix_valid(p, result.certificate) ||
      column_sum(result.certificate, result.reference) != 1) {
    return false;
  }
  // The ray obeys the same homogeneous constraints.
  if (!distance_matrix_valid(p, *result.ray)) return false;
  return sgn(column_sum(*result.ray, result.reference)) == 0 &&
         sgn(column_sum(*result.ray, c)) > 0;
}

RationalMatrix extend_to_full_pseudometric(const DistanceMatrix& dm, ExtensionCheck check) {
  const std::size_t n = dm.d.size();
  const std::size_t m = n ? dm.d.front().size() : 0;
  for (const auto& row : dm.d) {
    if (row.size() != m) throw std::invalid_argument("ragged distance matrix");
    for (const auto& x : row) {
      if (sgn(x) < 0) throw std::invalid_argument("negative distance");
    }
  }
  if (check == ExtensionCheck::Quadrangle && !quadrangles_hold(dm.d)) {
    throw std::invalid_argument("distance matrix violates a quadrangle inequality");
  }
  const std::size_t N = n + m;
  RationalMatrix full = zero_matrix(N, N);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < m; ++a) {
      full[i][n + a] = dm.d[i][a];
      full[n + a][i] = dm.d[i][a];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || m == 0) continue;
      Rational best = dm.d[i][0] + dm.d[j][0];
      for (std::size_t a = 1; a < m; ++a) {
        Rational v = dm.d[i][a] + dm.d[j][a];
        if (v < best) best = v;
      }
      full[i][j] = best;
    }
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b || n == 0) continue;
      Rational best = dm.d[0][a] + dm.d[0][b];
      for (std::size_t i = 1; i < n; ++i) {
        Rational v = dm.d[i][a] + dm.d[i][b];
        if (v < best) best = v;
      }
      full[n + a][n + b] = best;
    }
  }
  return full;
}

std::size_t triangle_violations(const RationalMatrix& full) {
  const std::size_t N = full.size();
  std::size_t bad = 0;
  for (std::size_t x = 0; x < N; ++x) {
    if (sgn(full[x][x]) != 0) ++bad;
    for (std::size_t y = 0; y < N; ++y) {
      if (sgn(full[x][y]) < 0 || full[x][y] != full[y][x]) ++bad;
      for (std::size_t z = 0; z < N; ++z) {
        if (full[x][z] > full[x][y] + full[y][z]) ++bad;
      }
    }
  }
  return bad;
}

std::string format_distance_matrix(const DistanceMatrix& dm) {
  std::ostringstream out;
  for (const auto& row : dm.d) {
    for (std::size_t a = 0; a < row.size(); ++a) out << (a ? " " : "") << to_string(row[a]);
    out << '\n';
  }
  return out.str();
}

DistortionSweep distortion_bound_sweep(const std::vector<PreferenceProfile>& family, std::size_t extra_orders,
                                       std::uint64_t seed, const Rational& bound) {
  DistortionSweep out;
  out.worst = 0;
  std::mt19937_64 rng(seed);
  for (const auto& p : family) {
    ++out.instances;
    // candidate -> rules that picked it
    std::map<Candidate, std::vector<std::string>> picked;
    picked[plurality_veto(p)].push_back("plurality-veto");
    for (std::size_t k = 0; k < extra_orders; ++k) {
      picked[plurality_veto(p, random_order(p.voters(), rng))].push_back("plurality-veto");
    }
    for (auto c : plurality_matching_winners(p).members()) picked[c].push_back("plurality-matching");
    picked[composite_distortion_rule(p)].push_back("composite");

    for (const auto& [c, rules] : picked) {
      ++out.checks;
      const auto r = distortion_of_candidate(p, c);
      bool ok = !r.infinite && verify_certificate(p, c, r);
      if (ok) ok = triangle_violations(extend_to_full_pseudometric(r.certificate, ExtensionCheck::None)) == 0;
      if (!r.infinite && r.value > out.worst) out.worst = r.value;
      if (ok && r.value <= bound) continue;
      std::string names;
      for (const auto& rule : rules) {
        if (names.find(rule) == std::string::npos) names += (names.empty() ? "" : ",") + rule;
      }
      out.failures.push_back({serialize_profile(p), names, c, r.infinite, r.value, ok});
    }
  }
  return out;
}

}  // namespace vetokit
