#include "vetokit/lp.hpp"

#include <map>
#include <optional>
#include <stdexcept>

namespace vetokit {

namespace {

using SparseColumn = std::vector<std::pair<std::size_t, Rational>>;

/// Standard form  min cost·w  s.t.  M w = rhs, w >= 0, rhs >= 0, with an
/// artificial identity block appended for phase 1.
struct DualProblem {
  std::size_t rows = 0;
  std::vector<SparseColumn> columns;  // structural only
  std::vector<Rational> cost;         // structural only
  std::vector<Rational> rhs;
  std::vector<int> row_sign;  // ±1 applied to primal objective row j
};

SparseColumn merged_terms(const LpRow& row, std::size_t variables) {
  std::map<std::size_t, Rational> acc;
  for (const auto& t : row.terms) {
    if (t.var >= variables) throw std::invalid_argument("LP term references unknown variable");
    acc[t.var] += t.coef;
  }
  SparseColumn out;
  for (auto& [v, c] : acc) {
    if (sgn(c) != 0) out.emplace_back(v, c);
  }
  return out;
}

DualProblem build_dual(const LinearProgram& lp) {
  const std::size_t R = lp.variables;
  if (lp.objective.size() != R) throw std::invalid_argument("objective length != variables");
  DualProblem d;
  d.rows = R;
  d.row_sign.resize(R);
  d.rhs.resize(R);
  for (std::size_t j = 0; j < R; ++j) {
    d.row_sign[j] = sgn(lp.objective[j]) < 0 ? -1 : 1;
    d.rhs[j] = abs(lp.objective[j]);
  }
  auto signed_column = [&](const SparseColumn& terms, int scale) {
    SparseColumn col;
    col.reserve(terms.size());
    for (const auto& [j, a] : terms) col.emplace_back(j, a * (scale * d.row_sign[j]));
    return col;
  };
  for (const auto& row : lp.rows) {
    const auto terms = merged_terms(row, R);
    switch (row.sense) {
      case RowSense::LessEqual:
        d.columns.push_back(signed_column(terms, 1));
        d.cost.push_back(row.rhs);
        break;
      case RowSense::GreaterEqual:
        d.columns.push_back(signed_column(terms, -1));
        d.cost.push_back(-row.rhs);
        break;
      case RowSense::Equal:
        d.columns.push_back(signed_column(terms, 1));
        d.cost.push_back(row.rhs);
        d.columns.push_back(signed_column(terms, -1));
        d.cost.push_back(-row.rhs);
        break;
    }
  }
  for (std::size_t j = 0; j < R; ++j) {
    d.columns.push_back({{j, Rational(-d.row_sign[j])}});
    d.cost.push_back(0);
  }
  return d;
}

/// Revised simplex with an explicit dense basis inverse.
class RevisedSimplex {
 public:
  explicit RevisedSimplex(const DualProblem& prob)
      : prob_(prob),
        rows_(prob.rows),
        structural_(prob.columns.size()),
        basis_(rows_),
        in_basis_(structural_ + rows_, false),
        binv_(zero_matrix(rows_, rows_)),
        xb_(prob.rhs) {
    for (std::size_t i = 0; i < rows_; ++i) {
      basis_[i] = structural_ + i;
      in_basis_[structural_ + i] = true;
      binv_[i][i] = 1;
    }
  }

  enum class Outcome { Optimal, Unbounded };

  /// Bland's rule: lowest-index improving column enters, lowest-index basic
  /// variable leaves among ratio ties. Only structural columns may enter.
  Outcome optimize(const std::vector<Rational>& cost) {
    while (true) {
      const auto pi = multipliers(cost);
      std::optional<std::size_t> entering;
      for (std::size_t q = 0; q < structural_; ++q) {
        if (in_basis_[q]) continue;
        Rational reduced = cost[q];
        for (const auto& [j, a] : prob_.columns[q]) reduced -= pi[j] * a;
        if (sgn(reduced) < 0) {
          entering = q;
          break;
        }
      }
      if (!entering) return Outcome::Optimal;

      const auto dir = ftran(prob_.columns[*entering]);
      std::optional<std::size_t> leave;
      Rational best_ratio;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (sgn(dir[i]) <= 0) continue;
        Rational ratio = xb_[i] / dir[i];
        if (!leave || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*leave])) {
          leave = i;
          best_ratio = std::move(ratio);
        }
      }
      if (!leave) return Outcome::Unbounded;
      pivot(*leave, *entering, dir);
    }
  }

  /// Pivot basic artificials out where some structural column allows it.
  void expel_artificials() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < structural_) continue;
      for (std::size_t q = 0; q < structural_; ++q) {
        if (in_basis_[q]) continue;
        Rational entry = 0;
        for (const auto& [j, a] : prob_.columns[q]) entry += binv_[i][j] * a;
        if (sgn(entry) != 0) {
          pivot(i, q, ftran(prob_.columns[q]));
          break;
        }
      }
    }
  }

  std::vector<Rational> multipliers(const std::vector<Rational>& cost) const {
    std::vector<Rational> pi(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      const Rational& cb = cost[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t k = 0; k < rows_; ++k) {
        if (sgn(binv_[i][k]) != 0) pi[k] += cb * binv_[i][k];
      }
    }
    return pi;
  }

  Rational objective(const std::vector<Rational>& cost) const {
    Rational v = 0;
    for (std::size_t i = 0; i < rows_; ++i) v += cost[basis_[i]] * xb_[i];
    return v;
  }

  std::size_t pivots() const { return pivots_; }

 private:
  std::vector<Rational> ftran(const SparseColumn& col) const {
    std::vector<Rational> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (const auto& [j, a] : col) {
        if (sgn(binv_[i][j]) != 0) out[i] += binv_[i][j] * a;
      }
    }
    return out;
  }

  void pivot(std::size_t r, std::size_t q, const std::vector<Rational>& dir) {
    const Rational piv = dir[r];
    const Rational theta = xb_[r] / piv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i != r && sgn(dir[i]) != 0) xb_[i] -= theta * dir[i];
    }
    xb_[r] = theta;

    std::vector<std::size_t> nz;
    for (std::size_t k = 0; k < rows_; ++k) {
      if (sgn(binv_[r][k]) != 0) {
        binv_[r][k] /= piv;
        nz.push_back(k);
      }
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || sgn(dir[i]) == 0) continue;
      const Rational f = dir[i];
      for (auto k : nz) binv_[i][k] -= f * binv_[r][k];
    }
    in_basis_[basis_[r]] = false;
    basis_[r] = q;
    in_basis_[q] = true;
    ++pivots_;
  }

  const DualProblem& prob_;
  std::size_t rows_;
  std::size_t structural_;
  std::vector<std::size_t> basis_;
  std::vector<bool> in_basis_;
  RationalMatrix binv_;
  std::vector<Rational> xb_;
  std::size_t pivots_ = 0;
};

Rational row_activity(const LpRow& row, const std::vector<Rational>& x) {
  Rational s = 0;
  for (const auto& t : row.terms) s += t.coef * x[t.var];
  return s;
}

}  // namespace

LpSolution solve_lp(const LinearProgram& input) {
  LinearProgram lp = input;
  for (auto& c : lp.objective) c.canonicalize();
  for (auto& row : lp.rows) {
    row.rhs.canonicalize();
    for (auto& t : row.terms) t.coef.canonicalize();
  }
  const auto dual = build_dual(lp);
  const std::size_t S = dual.columns.size();
  const std::size_t R = dual.rows;
  RevisedSimplex simplex(dual);

  std::vector<Rational> phase1(S + R, 0);
  for (std::size_t i = 0; i < R; ++i) phase1[S + i] = 1;
  simplex.optimize(phase1);  // bounded below by 0

  LpSolution out;
  if (sgn(simplex.objective(phase1)) > 0) {
    // Farkas: the phase-1 multipliers give an improving primal direction.
    const auto pi = simplex.multipliers(phase1);
    out.status = LpStatus::Unbounded;
    out.ray.resize(R);
    for (std::size_t j = 0; j < R; ++j) out.ray[j] = pi[j] * dual.row_sign[j];
    out.pivots = simplex.pivots();
    if (!lp_ray_valid(lp, out.ray) || sgn(lp_objective(lp, out.ray)) <= 0) {
      throw std::logic_error("solve_lp: derived ray is not an improving direction");
    }
    return out;
  }

  simplex.expel_artificials();
  std::vector<Rational> phase2(S + R, 0);
  for (std::size_t q = 0; q < S; ++q) phase2[q] = dual.cost[q];
  const auto outcome = simplex.optimize(phase2);
  out.pivots = simplex.pivots();
  if (outcome == RevisedSimplex::Outcome::Unbounded) {
    out.status = LpStatus::Infeasible;
    return out;
  }
  const auto pi = simplex.multipliers(phase2);
  out.status = LpStatus::Optimal;
  out.value = simplex.objective(phase2);
  out.x.resize(R);
  for (std::size_t j = 0; j < R; ++j) out.x[j] = pi[j] * dual.row_sign[j];
  if (!lp_point_feasible(lp, out.x) || lp_objective(lp, out.x) != out.value) {
    throw std::logic_error("solve_lp: recovered primal point fails verification");
  }
  return out;
}

bool lp_point_feasible(const LinearProgram& lp, const std::vector<Rational>& x) {
  if (x.size() != lp.variables) return false;
  for (const auto& v : x) {
    if (sgn(v) < 0) return false;
  }
  for (const auto& row : lp.rows) {
    const int cmp_ = cmp(row_activity(row, x), row.rhs);
    if ((row.sense == RowSense::LessEqual && cmp_ > 0) || (row.sense == RowSense::Equal && cmp_ != 0) ||
        (row.sense == RowSense::GreaterEqual && cmp_ < 0)) {
      return false;
    }
  }
  return true;
}

bool lp_ray_valid(const LinearProgram& lp, const std::vector<Rational>& ray) {
  if (ray.size() != lp.variables) return false;
  for (const auto& v : ray) {
    if (sgn(v) < 0) return false;
  }
  for (const auto& row : lp.rows) {
    const int s = sgn(row_activity(row, ray));
    if ((row.sense == RowSense::LessEqual && s > 0) || (row.sense == RowSense::Equal && s != 0) ||
        (row.sense == RowSense::GreaterEqual && s < 0)) {
      return false;
    }
  }
  return true;
}

Rational lp_objective(const LinearProgram& lp, const std::vector<Rational>& x) {
  Rational v = 0;
  for (std::size_t j = 0; j < lp.variables; ++j) v += lp.objective[j] * x[j];
  return v;
}

}  // namespace vetokit
