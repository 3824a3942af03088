#pragma once

#include "vetokit/profile.hpp"
#include "vetokit/rational.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vetokit {

/// Parses either the native format
///
///     m n
///     a b c
///     a>b>c
///     ...            (n ranking lines)
///
/// or a PrefLib strict-order-complete file ("count: i1,i2,...,im" ballot
/// lines, 1-based indices, '#' headers). Blank lines and '#' comment lines are
/// skipped in both. Errors throw ParseError carrying the 1-based line.
PreferenceProfile parse_profile(std::string_view text);

/// Native format; parse_profile(serialize_profile(p)) == p.
std::string serialize_profile(const PreferenceProfile& p);

/// Throws IoError when the file cannot be read, ParseError on bad content.
PreferenceProfile load_profile(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// n independent uniform permutations, reproducible from the seed.
PreferenceProfile gen_impartial_culture(std::size_t n, std::size_t m, std::uint64_t seed);

struct PlanarPoint {
  Rational x;
  Rational y;
};

/// A profile together with ground-truth voter-candidate distances that
/// induce it (ties broken by candidate index).
struct MetricInstance {
  PreferenceProfile profile;
  RationalMatrix distances;  // voter x candidate
  std::optional<std::vector<PlanarPoint>> voter_points;
  std::optional<std::vector<PlanarPoint>> candidate_points;
};

/// Voters and candidates uniform on a rational grid in the unit square; the
/// metric is L-infinity, so distances stay exact rationals.
MetricInstance gen_euclidean(std::size_t n, std::size_t m, std::uint64_t seed);

Rational linf_distance(const PlanarPoint& a, const PlanarPoint& b);

/// Σ_i d(i,c)
Rational empirical_social_cost(const MetricInstance& mi, Candidate c);

/// a ≻_i b implies d(i,a) <= d(i,b), all entries nonnegative, and (when
/// present) distances equal the L-infinity distance of the stored points.
bool metric_instance_consistent(const MetricInstance& mi);

/// Sidecar text: coordinates (if any) and the distance matrix as "p/q".
std::string serialize_metric(const MetricInstance& mi);
MetricInstance parse_metric(const PreferenceProfile& profile, std::string_view text);

}  // namespace vetokit
