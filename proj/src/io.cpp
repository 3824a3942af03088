#include "vetokit/io.hpp"

#include "vetokit/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace vetokit {

namespace {

struct Line {
  std::size_t number;
  std::string text;
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back({number++, trim(text.substr(start, end - start))});
    start = end + 1;
  }
  return lines;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto end = s.find(sep, start);
    out.push_back(trim(s.substr(start, end == std::string_view::npos ? s.npos : end - start)));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

std::optional<std::size_t> parse_count(std::string_view s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

bool is_comment(const Line& l) { return !l.text.empty() && l.text.front() == '#'; }

bool looks_like_preflib(const std::vector<Line>& lines) {
  for (const auto& l : lines) {
    if (l.text.empty() || is_comment(l)) continue;
    return l.text.find(':') != std::string::npos;
  }
  return false;
}

PreferenceProfile parse_native(const std::vector<Line>& all) {
  std::vector<const Line*> lines;
  for (const auto& l : all) {
    if (!l.text.empty() && !is_comment(l)) lines.push_back(&l);
  }
  if (lines.empty()) throw ParseError(0, "empty profile");

  const auto header = split_ws(lines[0]->text);
  std::optional<std::size_t> m, n;
  if (header.size() == 2) {
    m = parse_count(header[0]);
    n = parse_count(header[1]);
  }
  if (!m || !n || *m == 0 || *n == 0) {
    throw ParseError(lines[0]->number, "malformed header, expected \"m n\" with m, n >= 1");
  }
  if (lines.size() < 2) throw ParseError(lines[0]->number, "missing candidate label line");

  auto names = split_ws(lines[1]->text);
  if (names.size() != *m) {
    throw ParseError(lines[1]->number, "expected " + std::to_string(*m) + " candidate labels, got " +
                                           std::to_string(names.size()));
  }
  std::map<std::string, Candidate> index;
  for (std::size_t c = 0; c < names.size(); ++c) {
    if (!is_valid_label(names[c])) {
      throw ParseError(lines[1]->number, "invalid candidate label '" + names[c] + "'");
    }
    if (!index.emplace(names[c], c).second) {
      throw ParseError(lines[1]->number, "duplicate candidate label '" + names[c] + "'");
    }
  }

  if (lines.size() - 2 != *n) {
    const auto where = lines.size() - 2 < *n ? lines.back()->number : lines[2 + *n]->number;
    throw ParseError(where, "expected " + std::to_string(*n) + " ranking lines, got " +
                                std::to_string(lines.size() - 2));
  }

  std::vector<std::vector<Candidate>> rankings;
  for (std::size_t v = 0; v < *n; ++v) {
    const Line& l = *lines[2 + v];
    std::vector<bool> used(*m, false);
    std::vector<Candidate> r;
    for (const auto& tok : split(l.text, '>')) {
      auto it = index.find(tok);
      if (it == index.end()) throw ParseError(l.number, "unknown candidate '" + tok + "'");
      if (used[it->second]) throw ParseError(l.number, "duplicate candidate '" + tok + "'");
      used[it->second] = true;
      r.push_back(it->second);
    }
    if (r.size() != *m) {
      throw ParseError(l.number, "ranking is not complete: " + std::to_string(r.size()) + " of " +
                                     std::to_string(*m) + " candidates");
    }
    rankings.push_back(std::move(r));
  }
  return PreferenceProfile(std::move(names), std::move(rankings));
}

std::string sanitize_label(std::string s) {
  for (auto& ch : s) {
    if (ch == ' ' || ch == '\t' || ch == '>' || ch == ',' || ch == ':' || ch == '#') ch = '_';
  }
  return s;
}

PreferenceProfile parse_preflib(const std::vector<Line>& lines) {
  std::optional<std::size_t> m;
  std::map<std::size_t, std::string> alt_names;
  std::vector<std::vector<Candidate>> rankings;
  std::size_t first_ballot_line = 0;

  for (const auto& l : lines) {
    if (l.text.empty()) continue;
    if (is_comment(l)) {
      const std::string body = trim(std::string_view(l.text).substr(1));
      const auto colon = body.find(':');
      if (colon == std::string::npos) continue;
      const std::string key = trim(std::string_view(body).substr(0, colon));
      const std::string value = trim(std::string_view(body).substr(colon + 1));
      if (key == "NUMBER ALTERNATIVES") {
        m = parse_count(value);
        if (!m || *m == 0) throw ParseError(l.number, "malformed NUMBER ALTERNATIVES header");
      } else if (key.rfind("ALTERNATIVE NAME", 0) == 0) {
        auto idx = parse_count(trim(std::string_view(key).substr(16)));
        if (!idx || *idx == 0) throw ParseError(l.number, "malformed ALTERNATIVE NAME header");
        alt_names[*idx] = sanitize_label(value);
      }
      continue;
    }
    if (l.text.find('{') != std::string::npos) {
      throw ParseError(l.number, "ties are not supported; only strict complete orders");
    }
    const auto colon = l.text.find(':');
    if (colon == std::string::npos) throw ParseError(l.number, "expected \"count: i1,...,im\"");
    auto count = parse_count(trim(std::string_view(l.text).substr(0, colon)));
    if (!count) throw ParseError(l.number, "malformed ballot count");
    const auto items = split(std::string_view(l.text).substr(colon + 1), ',');
    if (!m) m = items.size();
    if (first_ballot_line == 0) first_ballot_line = l.number;
    std::vector<bool> used(*m, false);
    std::vector<Candidate> r;
    for (const auto& tok : items) {
      auto idx = parse_count(tok);
      if (!idx || *idx == 0 || *idx > *m) {
        throw ParseError(l.number, "invalid alternative index '" + tok + "'");
      }
      if (used[*idx - 1]) throw ParseError(l.number, "duplicate candidate '" + tok + "'");
      used[*idx - 1] = true;
      r.push_back(*idx - 1);
    }
    if (r.size() != *m) {
      throw ParseError(l.number, "incomplete order: only complete strict orders are accepted");
    }
    for (std::size_t k = 0; k < *count; ++k) rankings.push_back(r);
  }
  if (rankings.empty()) throw ParseError(0, "no ballots");

  std::vector<std::string> names;
  for (std::size_t c = 1; c <= *m; ++c) {
    auto it = alt_names.find(c);
    names.push_back(it != alt_names.end() && !it->second.empty() ? it->second
                                                                  : "c" + std::to_string(c));
  }
  try {
    return PreferenceProfile(std::move(names), std::move(rankings));
  } catch (const std::invalid_argument& e) {
    throw ParseError(first_ballot_line, e.what());
  }
}

}  // namespace

PreferenceProfile parse_profile(std::string_view text) {
  const auto lines = split_lines(text);
  if (looks_like_preflib(lines)) return parse_preflib(lines);
  return parse_native(lines);
}

std::string serialize_profile(const PreferenceProfile& p) {
  std::ostringstream out;
  out << p.candidates() << ' ' << p.voters() << '\n';
  for (Candidate c = 0; c < p.candidates(); ++c) out << (c ? " " : "") << p.name(c);
  out << '\n';
  for (Voter i = 0; i < p.voters(); ++i) {
    bool first = true;
    for (Candidate c : p.ranking(i)) {
      out << (first ? "" : ">") << p.name(c);
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

PreferenceProfile load_profile(const std::filesystem::path& path) {
  return parse_profile(read_text_file(path));
}

PreferenceProfile gen_impartial_culture(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n == 0 || m == 0) throw std::invalid_argument("gen_impartial_culture: n, m must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Candidate>> rankings(n, std::vector<Candidate>(m));
  for (auto& r : rankings) {
    std::iota(r.begin(), r.end(), Candidate{0});
    std::shuffle(r.begin(), r.end(), rng);
  }
  return PreferenceProfile::with_default_names(std::move(rankings));
}

Rational linf_distance(const PlanarPoint& a, const PlanarPoint& b) {
  Rational dx = abs(a.x - b.x);
  Rational dy = abs(a.y - b.y);
  return dx > dy ? dx : dy;
}

MetricInstance gen_euclidean(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n == 0 || m == 0) throw std::invalid_argument("gen_euclidean: n, m must be >= 1");
  constexpr unsigned long kGrid = 1UL << 16;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<unsigned long> coord(0, kGrid);
  auto draw = [&] {
    PlanarPoint p{Rational(coord(rng), kGrid), Rational(coord(rng), kGrid)};
    p.x.canonicalize();
    p.y.canonicalize();
    return p;
  };
  std::vector<PlanarPoint> voters, cands;
  for (std::size_t i = 0; i < n; ++i) voters.push_back(draw());
  for (std::size_t c = 0; c < m; ++c) cands.push_back(draw());

  RationalMatrix d = zero_matrix(n, m);
  std::vector<std::vector<Candidate>> rankings;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < m; ++c) d[i][c] = linf_distance(voters[i], cands[c]);
    std::vector<Candidate> r(m);
    std::iota(r.begin(), r.end(), Candidate{0});
    std::stable_sort(r.begin(), r.end(), [&](Candidate a, Candidate b) { return d[i][a] < d[i][b]; });
    rankings.push_back(std::move(r));
  }
  return MetricInstance{PreferenceProfile::with_default_names(std::move(rankings)), std::move(d),
                        std::move(voters), std::move(cands)};
}

Rational empirical_social_cost(const MetricInstance& mi, Candidate c) {
  if (c >= mi.profile.candidates()) throw std::invalid_argument("unknown candidate");
  Rational sum = 0;
  for (const auto& row : mi.distances) sum += row[c];
  return sum;
}

bool metric_instance_consistent(const MetricInstance& mi) {
  const auto& p = mi.profile;
  if (mi.distances.size() != p.voters()) return false;
  for (Voter i = 0; i < p.voters(); ++i) {
    const auto& row = mi.distances[i];
    if (row.size() != p.candidates()) return false;
    for (const auto& x : row) {
      if (sgn(x) < 0) return false;
    }
    auto r = p.ranking(i);
    for (std::size_t k = 0; k + 1 < r.size(); ++k) {
      if (row[r[k]] > row[r[k + 1]]) return false;
    }
    if (mi.voter_points && mi.candidate_points) {
      for (Candidate c = 0; c < p.candidates(); ++c) {
        if (row[c] != linf_distance((*mi.voter_points)[i], (*mi.candidate_points)[c])) return false;
      }
    }
  }
  return true;
}

std::string serialize_metric(const MetricInstance& mi) {
  const auto& p = mi.profile;
  std::ostringstream out;
  out << "# metric sidecar: L-infinity distances, one row per voter\n";
  out << "metric " << p.voters() << ' ' << p.candidates() << '\n';
  if (mi.voter_points && mi.candidate_points) {
    for (std::size_t i = 0; i < p.voters(); ++i) {
      const auto& pt = (*mi.voter_points)[i];
      out << "voter " << (i + 1) << ' ' << to_string(pt.x) << ' ' << to_string(pt.y) << '\n';
    }
    for (Candidate c = 0; c < p.candidates(); ++c) {
      const auto& pt = (*mi.candidate_points)[c];
      out << "candidate " << p.name(c) << ' ' << to_string(pt.x) << ' ' << to_string(pt.y) << '\n';
    }
  }
  out << "distances\n";
  for (const auto& row : mi.distances) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? " " : "") << to_string(row[c]);
    out << '\n';
  }
  return out.str();
}

MetricInstance parse_metric(const PreferenceProfile& profile, std::string_view text) {
  const auto lines = split_lines(text);
  std::vector<PlanarPoint> voters, cands;
  RationalMatrix d;
  bool in_distances = false;
  bool saw_header = false;
  for (const auto& l : lines) {
    if (l.text.empty() || is_comment(l)) continue;
    const auto tok = split_ws(l.text);
    try {
      if (in_distances) {
        if (tok.size() != profile.candidates()) throw ParseError(l.number, "distance row length");
        std::vector<Rational> row;
        for (const auto& t : tok) row.push_back(parse_rational(t));
        d.push_back(std::move(row));
      } else if (tok[0] == "metric") {
        if (tok.size() != 3 || parse_count(tok[1]) != profile.voters() ||
            parse_count(tok[2]) != profile.candidates()) {
          throw ParseError(l.number, "metric header does not match the profile");
        }
        saw_header = true;
      } else if (tok[0] == "voter" && tok.size() == 4) {
        voters.push_back({parse_rational(tok[2]), parse_rational(tok[3])});
      } else if (tok[0] == "candidate" && tok.size() == 4) {
        cands.push_back({parse_rational(tok[2]), parse_rational(tok[3])});
      } else if (tok[0] == "distances") {
        in_distances = true;
      } else {
        throw ParseError(l.number, "unrecognised metric line");
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(l.number, e.what());
    }
  }
  if (!saw_header) throw ParseError(0, "missing metric header");
  if (d.size() != profile.voters()) throw ParseError(0, "distance matrix has wrong row count");
  MetricInstance mi{profile, std::move(d), std::nullopt, std::nullopt};
  if (!voters.empty() || !cands.empty()) {
    if (voters.size() != profile.voters() || cands.size() != profile.candidates()) {
      throw ParseError(0, "coordinate count does not match the profile");
    }
    mi.voter_points = std::move(voters);
    mi.candidate_points = std::move(cands);
  }
  return mi;
}

}  // namespace vetokit
