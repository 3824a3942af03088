#pragma once

#include "vetokit/io.hpp"
#include "vetokit/profile.hpp"

namespace vetokit::fixtures {

// v1,v2: c1>c2>c3; v3,v4: c3>c2>c1
inline PreferenceProfile fix_p() {
  return parse_profile("3 4\nc1 c2 c3\nc1>c2>c3\nc1>c2>c3\nc3>c2>c1\nc3>c2>c1\n");
}
// v1: a>b>c; v2: b>a>c; v3: c>b>a
inline PreferenceProfile fix_t() { return parse_profile("3 3\na b c\na>b>c\nb>a>c\nc>b>a\n"); }
// v1: a>b; v2: b>a
inline PreferenceProfile fix_s() { return parse_profile("2 2\na b\na>b\nb>a\n"); }
// both a>b
inline PreferenceProfile fix_u() { return parse_profile("2 2\na b\na>b\na>b\n"); }
// v1: a>b>c; v2: a>c>b; v3: b>a>c
inline PreferenceProfile fix_c() { return parse_profile("3 3\na b c\na>b>c\na>c>b\nb>a>c\n"); }

inline Candidate cand(const PreferenceProfile& p, std::string_view name) { return *p.find(name); }

}  // namespace vetokit::fixtures
