#pragma once

#include "vetokit/lp.hpp"
#include "vetokit/profile.hpp"
#include "vetokit/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vetokit {

/// Voter x candidate distances d(i,a).
struct DistanceMatrix {
  RationalMatrix d;
};

struct DistortionResult {
  bool infinite = false;
  /// sup over consistent metrics of sw(c)/sw(reference); meaningless when
  /// infinite.
  Rational value;
  Candidate reference = 0;
  /// Finite: a maximiser with Σ_i d(i,reference) = 1 and Σ_i d(i,c) = value.
  /// Infinite: a feasible base point (uniform 1/n).
  DistanceMatrix certificate;
  /// Infinite only: a direction keeping every constraint and the
  /// normalisation while Σ_i d(i,c) grows.
  std::optional<DistanceMatrix> ray;
  std::size_t lp_pivots = 0;
};

inline constexpr std::size_t kDefaultMaxLpVariables = 100;

/// Variable index of d(i,a).
inline std::size_t distance_var(Voter i, Candidate a, std::size_t m) { return i * m + a; }

/// maximize Σ_i d(i,c) over d >= 0 subject to
///   d(i,a) <= d(i,b) whenever a directly precedes b in voter i's ranking,
///   d(i,a) <= d(i,b) + d(j,b) + d(j,a) for all voters i,j and candidates a,b,
///   Σ_i d(i,cref) = 1.
LinearProgram build_lp(const PreferenceProfile& p, Candidate c, Candidate cref);

/// Maximum over cref != c of the LP optimum; 1 when m = 1; infinite as soon
/// as one LP is unbounded. Throws SizeLimitError when n·m > max_variables.
DistortionResult distortion_of_candidate(const PreferenceProfile& p, Candidate c,
                                         std::size_t max_variables = kDefaultMaxLpVariables);

/// Consistency with p, nonnegativity and every quadrangle inequality.
bool distance_matrix_valid(const PreferenceProfile& p, const DistanceMatrix& dm);

/// Solver-independent re-check of a finite result: matrix validity plus
/// Σ_i d(i,reference) = 1 and Σ_i d(i,c) = value.
bool verify_certificate(const PreferenceProfile& p, Candidate c, const DistortionResult& result);

/// Infinite results: base point valid and normalised, ray nonnegative,
/// consistent, quadrangle-closed, with Σ ray(i,reference) = 0 and
/// Σ ray(i,c) > 0.
bool verify_unbounded_certificate(const PreferenceProfile& p, Candidate c,
                                  const DistortionResult& result);

enum class ExtensionCheck { Quadrangle, None };

/// Full (N∪C)x(N∪C) distances, voters first:
///   d(i,j) = min_a d(i,a) + d(j,a),  d(a,b) = min_i d(i,a) + d(i,b),
/// zero diagonal. Throws std::invalid_argument on a negative entry, or on a
/// quadrangle violation unless `check` is None.
RationalMatrix extend_to_full_pseudometric(const DistanceMatrix& dm,
                                           ExtensionCheck check = ExtensionCheck::Quadrangle);

/// Number of (x,y,z) with d(x,z) > d(x,y) + d(y,z), plus asymmetric or
/// negative entries and nonzero diagonal entries.
std::size_t triangle_violations(const RationalMatrix& full);

/// One row per voter, entries "p/q" separated by spaces.
std::string format_distance_matrix(const DistanceMatrix& dm);

/// One candidate picked by some rule whose distortion broke the bound or
/// whose certificate failed to re-verify.
struct BoundFailure {
  std::string instance;  // serialized profile
  std::string rule;
  Candidate candidate = 0;
  bool infinite = false;
  Rational value;
  bool certificate_ok = false;
};

struct DistortionSweep {
  std::size_t instances = 0;
  /// (instance, candidate) pairs evaluated; a candidate picked by several
  /// rules is solved once.
  std::size_t checks = 0;
  Rational worst;
  std::vector<BoundFailure> failures;
};

/// For every profile: the Plurality Veto winner under the ascending order and
/// `extra_orders` seeded random orders, every plurality-matching winner, and
/// the composite rule's winner must have finite distortion <= bound with a
/// certificate that passes verify_certificate and the full triangle sweep.
DistortionSweep distortion_bound_sweep(const std::vector<PreferenceProfile>& family, std::size_t extra_orders,
                                       std::uint64_t seed, const Rational& bound = 3);

}  // namespace vetokit
