#pragma once

#include "vetokit/rational.hpp"

#include <cstddef>
#include <vector>

namespace vetokit {

enum class RowSense { LessEqual, Equal, GreaterEqual };

struct LpTerm {
  std::size_t var;
  Rational coef;
};

struct LpRow {
  std::vector<LpTerm> terms;
  RowSense sense = RowSense::LessEqual;
  Rational rhs;
};

/// maximize objective·x subject to rows, x >= 0.
struct LinearProgram {
  std::size_t variables = 0;
  std::vector<Rational> objective;
  std::vector<LpRow> rows;
};

enum class LpStatus { Optimal, Unbounded, Infeasible };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  /// Optimal point (Optimal only).
  std::vector<Rational> x;
  /// Improving direction: ray >= 0, keeps every row satisfied from any
  /// feasible point, objective·ray > 0 (Unbounded only).
  std::vector<Rational> ray;
  std::size_t pivots = 0;
};

/// Exact simplex with Bland's rule. Works on the dual (one constraint per
/// primal variable), so problems with many rows and few variables stay
/// small. Primal optimum and rays are read off the dual's simplex
/// multipliers.
///
/// An Unbounded answer assumes the primal is feasible: an infeasible dual
/// only proves "unbounded or infeasible". Infeasible means the dual is
/// unbounded, which proves primal infeasibility.
LpSolution solve_lp(const LinearProgram& lp);

bool lp_point_feasible(const LinearProgram& lp, const std::vector<Rational>& x);
/// ray >= 0 and every row's homogeneous part holds (<= 0, = 0, >= 0).
bool lp_ray_valid(const LinearProgram& lp, const std::vector<Rational>& ray);
Rational lp_objective(const LinearProgram& lp, const std::vector<Rational>& x);

}  // namespace vetokit
