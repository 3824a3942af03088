// vetokit command-line front end. Talks to the library only through the C API.

#include "vetokit/vetokit.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;

namespace {

// Exit codes
constexpr int kHolds = 0;
constexpr int kViolated = 1;
constexpr int kInput = 2;
constexpr int kUsage = 3;
constexpr int kResource = 4;
constexpr int kInternal = 5;

struct Failure {
  int code;
  std::string message;
};

int exit_code_for(vk_status s) {
  switch (s) {
    case VK_OK: return kHolds;
    case VK_E_PARSE:
    case VK_E_IO: return kInput;
    case VK_E_ARGUMENT: return kUsage;
    case VK_E_RESOURCE: return kResource;
    default: return kInternal;
  }
}

void check(vk_status s) {
  if (s != VK_OK) throw Failure{exit_code_for(s), vk_last_error()};
}

[[noreturn]] void usage(const std::string& message) { throw Failure{kUsage, message}; }

struct ProfileDeleter {
  void operator()(vk_profile* p) const { vk_profile_free(p); }
};
struct MetricDeleter {
  void operator()(vk_metric* m) const { vk_metric_free(m); }
};
using Profile = std::unique_ptr<vk_profile, ProfileDeleter>;
using Metric = std::unique_ptr<vk_metric, MetricDeleter>;

Profile load(const std::string& path) {
  vk_profile* p = nullptr;
  check(vk_profile_load(path.c_str(), &p));
  return Profile(p);
}

std::string take(char* s) {
  std::string out(s);
  vk_string_free(s);
  return out;
}

json take_json(char* s) { return json::parse(take(s)); }

std::string serialize(const vk_profile* p) {
  char* text = nullptr;
  check(vk_profile_serialize(p, &text));
  return take(text);
}

// FNV-1a over the canonical serialization.
std::string digest(const vk_profile* p) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : serialize(p)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

std::size_t candidate(const vk_profile* p, const std::string& name) {
  std::size_t c = 0;
  check(vk_profile_find(p, name.c_str(), &c));
  return c;
}

std::vector<std::size_t> candidates(const vk_profile* p, const std::vector<std::string>& names) {
  std::vector<std::size_t> out;
  for (const auto& n : names) out.push_back(candidate(p, n));
  return out;
}

std::vector<std::size_t> tie_break_order(const vk_profile* p, const std::vector<std::string>& names) {
  if (names.empty()) return {};
  auto order = candidates(p, names);
  if (order.size() != vk_profile_candidates(p)) usage("--tie-break must list every candidate once");
  return order;
}

// 1-based on the command line.
std::vector<std::size_t> voter_order(const vk_profile* p, const std::vector<std::size_t>& one_based) {
  std::vector<std::size_t> out;
  for (auto v : one_based) {
    if (v == 0 || v > vk_profile_voters(p)) usage("--order: voter " + std::to_string(v) + " out of range");
    out.push_back(v - 1);
  }
  return out;
}

std::string join(const json& arr, const char* sep = " ") {
  std::string out;
  for (const auto& x : arr) {
    if (!out.empty()) out += sep;
    out += x.is_string() ? x.get<std::string>() : x.dump();
  }
  return out;
}

std::string voters_text(const json& arr) {
  std::string out;
  for (const auto& v : arr) out += (out.empty() ? "v" : " v") + v.dump();
  return out;
}

void print_matrix(std::ostream& out, const json& names, const json& rows) {
  out << "voter " << join(names) << '\n';
  std::size_t i = 1;
  for (const auto& row : rows) out << 'v' << i++ << ": " << join(row) << '\n';
}

void print_trace(std::ostream& out, const json& trace) {
  for (const auto& e : trace["events"]) {
    out << '(' << e["time"].get<std::string>() << ", " << join(e["eliminated"]) << ")\n";
  }
}

struct Emitter {
  bool as_json = false;
  bool timing = false;
  std::string command;
  std::optional<std::uint64_t> seed;
  std::string instance;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void record(const json& result) const {
    json r;
    r["command"] = command;
    r["seed"] = seed ? json(*seed) : json(nullptr);
    r["instance_digest"] = instance.empty() ? json(nullptr) : json(instance);
    r["result"] = result;
    if (timing) {
      const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      r["timing_ms"] = ms;
    }
    std::cout << r.dump(2) << '\n';
  }
};

std::string command_echo(int argc, char** argv) {
  std::string out = "vetokit";
  for (int i = 1; i < argc; ++i) out += std::string(" ") + argv[i];
  return out;
}

// ---- rule ----

struct RuleArgs {
  std::string rule;
  std::string profile;
  std::vector<std::size_t> order;
  std::optional<std::size_t> k;
  std::optional<std::uint64_t> seed;
  std::size_t samples = 1000;
  std::vector<std::string> tie_break;
  bool trace = false;
};

std::size_t need_k(const RuleArgs& a) {
  if (!a.k) usage("--rule " + a.rule + " needs --k");
  return *a.k;
}

int run_rule(const RuleArgs& a, Emitter& em) {
  const auto p = load(a.profile);
  em.instance = digest(p.get());
  em.seed = a.seed;
  const auto tb = tie_break_order(p.get(), a.tie_break);
  char* out = nullptr;
  if (a.rule == "plurality-veto" || a.rule == "serial-dictatorship") {
    auto order = voter_order(p.get(), a.order);
    if (order.empty() && a.seed) {
      order.resize(vk_profile_voters(p.get()));
      std::iota(order.begin(), order.end(), 0);
      std::mt19937_64 rng(*a.seed);
      std::shuffle(order.begin(), order.end(), rng);
    }
    if (a.rule == "plurality-veto") {
      check(vk_rule_plurality_veto(p.get(), order.data(), order.size(), &out));
    } else {
      check(vk_rule_serial_dictatorship(p.get(), order.data(), order.size(), need_k(a), &out));
    }
    auto j = take_json(out);
    if (!order.empty()) {
      json shown = json::array();
      for (auto i : order) shown.push_back(i + 1);
      j["order"] = shown;
    }
    if (em.as_json) {
      em.record(j);
    } else if (j.contains("winner")) {
      std::cout << "winner: " << j["winner"].get<std::string>() << '\n';
    } else {
      for (const auto& m : j["matching"]) {
        std::cout << 'v' << m["voter"].get<std::size_t>() << " -> " << m["candidate"].get<std::string>() << '\n';
      }
    }
    return kHolds;
  }
  if (a.rule == "veto-consumption") {
    check(vk_rule_veto_by_consumption(p.get(), a.trace, &out));
  } else if (a.rule == "phragmen") {
    check(vk_rule_phragmen(p.get(), need_k(a), tb.data(), tb.size(), a.trace, &out));
  } else if (a.rule == "ps") {
    check(vk_rule_probabilistic_serial(p.get(), need_k(a), a.trace, &out));
  } else if (a.rule == "random-priority") {
    if (!a.seed) usage("--rule random-priority needs --seed");
    check(vk_rule_random_priority(p.get(), need_k(a), *a.seed, a.samples, &out));
  } else if (a.rule == "composite") {
    check(vk_rule_composite(p.get(), tb.data(), tb.size(), &out));
  }
  const auto j = take_json(out);
  if (em.as_json) {
    em.record(j);
    return kHolds;
  }
  if (j.contains("winner")) std::cout << "winner: " << j["winner"].get<std::string>() << '\n';
  if (j.contains("winners")) std::cout << "winners: " << join(j["winners"]) << '\n';
  if (j.contains("committee")) std::cout << "committee: " << join(j["committee"]) << '\n';
  if (j.contains("assignment")) print_matrix(std::cout, j["candidates"], j["assignment"]);
  if (j.contains("trace")) print_trace(std::cout, j["trace"]);
  return kHolds;
}

// ---- check ----

struct CheckArgs {
  std::string kind;
  std::string profile;
  std::string candidate;
  std::vector<std::string> committee;
  bool clone_plurality = false;
};

int run_check(const CheckArgs& a, Emitter& em) {
  const auto p = load(a.profile);
  em.instance = digest(p.get());
  int holds = 0;
  char* out = nullptr;
  auto need_candidate = [&] {
    if (a.candidate.empty()) usage("check " + a.kind + " needs --candidate");
    return candidate(p.get(), a.candidate);
  };

  if (a.kind == "psc") {
    if (a.committee.empty() == a.candidate.empty()) usage("check psc needs exactly one of --committee or --candidate");
    if (!a.committee.empty()) {
      const auto w = candidates(p.get(), a.committee);
      check(vk_check_weak_psc(p.get(), w.data(), w.size(), &holds, &out));
    } else {
      // C∖{c} on the reversed profile
      const auto c = need_candidate();
      vk_profile* raw = nullptr;
      check(vk_profile_reverse(p.get(), &raw));
      const Profile reversed(raw);
      std::vector<std::size_t> w;
      for (std::size_t x = 0; x < vk_profile_candidates(p.get()); ++x) {
        if (x != c) w.push_back(x);
      }
      check(vk_check_weak_psc(reversed.get(), w.data(), w.size(), &holds, &out));
    }
  } else if (a.kind == "veto-core") {
    check(vk_check_veto_core(p.get(), need_candidate(), &holds, &out));
  } else if (a.kind == "domination") {
    check(vk_check_domination(p.get(), need_candidate(), a.clone_plurality, &holds, &out));
  } else {
    check(vk_check_pareto_matching(p.get(), need_candidate(), &holds, &out));
  }
  auto j = take_json(out);
  if (a.kind == "psc" && a.committee.empty()) j["profile"] = "reversed";
  if (em.as_json) {
    em.record(j);
    return holds ? kHolds : kViolated;
  }

  if (a.kind == "veto-core") {
    std::cout << (holds ? "member" : "vetoed") << '\n';
    if (j.contains("witness")) {
      const auto& w = j["witness"];
      std::cout << "voters: " << voters_text(w["voters"]) << '\n'
                << "blocked_by: " << join(w["blocked_by"]) << '\n'
                << "veto_power: " << w["veto_power"].dump() << '\n';
    }
  } else if (a.kind == "psc") {
    std::cout << (holds ? "satisfied" : "violated") << '\n' << "committee: " << join(j["committee"]) << '\n';
    if (j.contains("violation")) {
      const auto& v = j["violation"];
      std::cout << "solid coalition: " << voters_text(v["supporters"]) << " support " << join(v["prefix_set"]) << '\n';
    }
  } else if (a.kind == "domination") {
    std::cout << (holds ? "perfect" : "deficient") << '\n';
    for (const auto& g : j["graphs"]) {
      std::cout << g["center"].get<std::string>() << ": flow " << g["flow"].dump() << '/' << g["target"].dump();
      if (g.contains("witness")) {
        std::cout << ", voters " << voters_text(g["witness"]["voters"]) << " dominate only "
                  << join(g["witness"]["dominated"]);
      }
      std::cout << '\n';
    }
  } else {
    std::cout << (holds ? "holds" : "fails") << '\n'
              << "matching size " << j["matching_size"].dump() << " of " << j["needed"].dump() << " needed\n";
    for (const auto& m : j["matching"]) {
      std::cout << 'v' << m["voter"].get<std::size_t>() << " -> " << m["candidate"].get<std::string>() << '\n';
    }
  }
  return holds ? kHolds : kViolated;
}

// ---- distortion ----

struct DistortionArgs {
  std::string profile;
  std::string candidate;
  std::size_t max_vars = 100;
  std::string certificate;
};

int run_distortion(const DistortionArgs& a, Emitter& em) {
  const auto p = load(a.profile);
  em.instance = digest(p.get());
  char* out = nullptr;
  check(vk_distortion(p.get(), candidate(p.get(), a.candidate), a.max_vars, &out));
  const auto j = take_json(out);
  if (!a.certificate.empty()) {
    std::ofstream f(a.certificate);
    for (const auto& row : j["certificate"]) f << join(row) << '\n';
    if (j.contains("ray")) {
      f << "# ray\n";
      for (const auto& row : j["ray"]) f << join(row) << '\n';
    }
    if (!f) throw Failure{kInput, "cannot write " + a.certificate};
  }
  if (em.as_json) {
    em.record(j);
  } else {
    std::cout << j["value"].get<std::string>() << '\n';
  }
  return kHolds;
}

// ---- audit ----

struct AuditArgs {
  bool exhaustive = false;
  std::size_t n = 3;
  std::size_t m = 3;
  std::size_t trials = 5000;
  std::size_t nmax = 6;
  std::size_t mmax = 5;
  std::uint64_t seed = 1;
  std::string profile;
};

int run_audit_equivalence(const AuditArgs& a, Emitter& em) {
  int clean = 0;
  char* out = nullptr;
  if (!a.profile.empty()) {
    const auto p = load(a.profile);
    em.instance = digest(p.get());
    check(vk_audit_equivalence_profile(p.get(), &clean, &out));
  } else if (a.exhaustive) {
    check(vk_audit_equivalence_exhaustive(a.n, a.m, &clean, &out));
  } else {
    em.seed = a.seed;
    check(vk_audit_equivalence_random(a.trials, a.nmax, a.mmax, a.seed, &clean, &out));
  }
  const auto j = take_json(out);
  if (em.as_json) {
    em.record(j);
  } else {
    std::cout << j["report"].get<std::string>();
  }
  return clean ? kHolds : kViolated;
}

int run_audit_distortion(const AuditArgs& a, Emitter& em) {
  int clean = 0;
  char* out = nullptr;
  em.seed = a.seed;
  check(vk_audit_distortion(a.trials, a.nmax, a.mmax, a.seed, &clean, &out));
  const auto j = take_json(out);
  if (em.as_json) {
    em.record(j);
  } else {
    for (const auto& f : j["failures"]) {
      std::cout << "failure rule=" << f["rule"].get<std::string>() << " candidate=" << f["candidate"].dump()
                << " value=" << f["value"].get<std::string>() << " instance=" << json(f["instance"]).dump() << '\n';
    }
    std::cout << "summary instances=" << j["instances"].dump() << " checks=" << j["checks"].dump()
              << " worst=" << j["worst"].get<std::string>() << " failures=" << j["failures"].size() << '\n';
  }
  return clean ? kHolds : kViolated;
}

// ---- gen ----

struct GenArgs {
  std::string model = "ic";
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t seed = 1;
  std::string output;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw Failure{kInput, "cannot write " + path};
}

int run_gen(const GenArgs& a) {
  if (a.model == "ic") {
    vk_profile* raw = nullptr;
    check(vk_gen_impartial_culture(a.n, a.m, a.seed, &raw));
    const Profile p(raw);
    if (a.output.empty()) {
      std::cout << serialize(p.get());
    } else {
      check(vk_profile_save(p.get(), a.output.c_str()));
    }
    return kHolds;
  }
  if (a.output.empty()) usage("gen --model euclidean needs -o");
  vk_metric* raw = nullptr;
  check(vk_gen_euclidean(a.n, a.m, a.seed, &raw));
  const Metric mi(raw);
  vk_profile* praw = nullptr;
  check(vk_metric_profile(mi.get(), &praw));
  const Profile p(praw);
  char* sidecar = nullptr;
  check(vk_metric_serialize(mi.get(), &sidecar));
  check(vk_profile_save(p.get(), a.output.c_str()));
  write_file(a.output + ".metric", take(sidecar));
  return kHolds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proportional veto, eating rules and metric distortion toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", vk_version());

  Emitter em;
  em.command = command_echo(argc, argv);
  auto add_output_flags = [&](CLI::App* cmd) {
    cmd->add_flag("--json", em.as_json, "Print a JSON run record");
    cmd->add_flag("--timing", em.timing, "Add wall-clock timing to the JSON record");
  };

  RuleArgs rule;
  auto* rule_cmd = app.add_subcommand("rule", "Run a voting rule");
  rule_cmd->add_option("--rule", rule.rule, "Rule to run")
      ->required()
      ->check(CLI::IsMember({"plurality-veto", "veto-consumption", "phragmen", "ps", "serial-dictatorship",
                             "random-priority", "composite"}));
  rule_cmd->add_option("--profile", rule.profile, "Profile file")->required();
  rule_cmd->add_option("--order", rule.order, "Voter order, 1-based, comma separated")->delimiter(',');
  rule_cmd->add_option("--k", rule.k, "Committee size or horizon");
  rule_cmd->add_option("--seed", rule.seed, "Seed for random orders and sampling");
  rule_cmd->add_option("--samples", rule.samples, "Random Priority sample count")->capture_default_str();
  rule_cmd->add_option("--tie-break", rule.tie_break, "Candidate order for simultaneous events")->delimiter(',');
  rule_cmd->add_flag("--trace", rule.trace, "Print the eating trace");
  add_output_flags(rule_cmd);

  CheckArgs chk;
  auto* check_cmd = app.add_subcommand("check", "Check an axiom or criterion");
  check_cmd->add_option("kind", chk.kind, "What to check")
      ->required()
      ->check(CLI::IsMember({"veto-core", "psc", "domination", "pareto-matching"}));
  check_cmd->add_option("--profile", chk.profile, "Profile file")->required();
  check_cmd->add_option("--candidate", chk.candidate, "Candidate label");
  check_cmd->add_option("--committee", chk.committee, "Committee labels, comma separated")->delimiter(',');
  check_cmd->add_flag("--clone-plurality", chk.clone_plurality, "Use the plurality-cloned instance");
  add_output_flags(check_cmd);

  DistortionArgs dist;
  auto* dist_cmd = app.add_subcommand("distortion", "Exact metric distortion of a candidate");
  dist_cmd->add_option("--profile", dist.profile, "Profile file")->required();
  dist_cmd->add_option("--candidate", dist.candidate, "Candidate label")->required();
  dist_cmd->add_option("--max-vars", dist.max_vars, "Cap on n*m LP variables")->capture_default_str();
  dist_cmd->add_option("--certificate", dist.certificate, "Write the certificate matrix here");
  add_output_flags(dist_cmd);

  AuditArgs audit;
  auto* audit_cmd = app.add_subcommand("audit", "Run an audit over a family of instances");
  audit_cmd->require_subcommand(1);
  auto* eq_cmd = audit_cmd->add_subcommand("equivalence", "Flow / veto core / weak-PSC / Pareto agreement");
  eq_cmd->add_flag("--exhaustive", audit.exhaustive, "Every profile with --n voters and --m candidates");
  eq_cmd->add_option("--n", audit.n, "Voters (exhaustive)")->capture_default_str();
  eq_cmd->add_option("--m", audit.m, "Candidates (exhaustive)")->capture_default_str();
  eq_cmd->add_option("--trials", audit.trials, "Random instances")->capture_default_str();
  eq_cmd->add_option("--nmax", audit.nmax, "Largest n (random)")->capture_default_str();
  eq_cmd->add_option("--mmax", audit.mmax, "Largest m (random)")->capture_default_str();
  eq_cmd->add_option("--seed", audit.seed, "Seed (random)")->capture_default_str();
  eq_cmd->add_option("--profile", audit.profile, "Audit a single profile file");
  add_output_flags(eq_cmd);
  AuditArgs sweep;
  sweep.trials = 200;
  sweep.nmax = 5;
  auto* d3_cmd = audit_cmd->add_subcommand("distortion3", "Distortion <= 3 sweep over rule winners");
  d3_cmd->add_option("--trials", sweep.trials, "Random instances")->capture_default_str();
  d3_cmd->add_option("--nmax", sweep.nmax, "Largest n")->capture_default_str();
  d3_cmd->add_option("--mmax", sweep.mmax, "Largest m")->capture_default_str();
  d3_cmd->add_option("--seed", sweep.seed, "Seed")->capture_default_str();
  add_output_flags(d3_cmd);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random profile");
  gen_cmd->add_option("--model", gen.model, "ic or euclidean")
      ->check(CLI::IsMember({"ic", "euclidean"}))
      ->capture_default_str();
  gen_cmd->add_option("--n", gen.n, "Voters")->required();
  gen_cmd->add_option("--m", gen.m, "Candidates")->required();
  gen_cmd->add_option("--seed", gen.seed, "Seed")->capture_default_str();
  gen_cmd->add_option("-o,--output", gen.output, "Output file (euclidean also writes <file>.metric)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*rule_cmd) return run_rule(rule, em);
    if (*check_cmd) return run_check(chk, em);
    if (*dist_cmd) return run_distortion(dist, em);
    if (*eq_cmd) return run_audit_equivalence(audit, em);
    if (*d3_cmd) return run_audit_distortion(sweep, em);
    if (*gen_cmd) return run_gen(gen);
  } catch (const Failure& f) {
    std::cerr << "vetokit: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "vetokit: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
