#include "vetokit/vetokit.h"

#include "vetokit/axioms.hpp"
#include "vetokit/distortion.hpp"
#include "vetokit/eating.hpp"
#include "vetokit/errors.hpp"
#include "vetokit/flow.hpp"
#include "vetokit/io.hpp"
#include "vetokit/profile.hpp"
#include "vetokit/rules.hpp"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct vk_profile {
  vetokit::PreferenceProfile p;
};

struct vk_metric {
  vetokit::MetricInstance mi;
};

using json = nlohmann::ordered_json;
using namespace vetokit;

namespace {

thread_local std::string last_error;

template <class F>
vk_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return VK_OK;
  } catch (const ParseError& e) {
    last_error = e.what();
    return VK_E_PARSE;
  } catch (const IoError& e) {
    last_error = e.what();
    return VK_E_IO;
  } catch (const SizeLimitError& e) {
    last_error = e.what();
    return VK_E_RESOURCE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return VK_E_RESOURCE;
  } catch (const std::invalid_argument& e) {
    last_error = e.what();
    return VK_E_ARGUMENT;
  } catch (const std::out_of_range& e) {
    last_error = e.what();
    return VK_E_ARGUMENT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return VK_E_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return VK_E_INTERNAL;
  }
}

void require(const void* ptr, const char* what) {
  if (ptr == nullptr) throw std::invalid_argument(std::string(what) + " is null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(const json& j, char** out) {
  require(out, "output pointer");
  *out = dup_string(j.dump());
}

std::vector<std::size_t> to_vector(const std::size_t* data, std::size_t len) {
  if (len > 0) require(data, "order");
  return data == nullptr ? std::vector<std::size_t>{} : std::vector<std::size_t>(data, data + len);
}

void check_candidate(const PreferenceProfile& p, std::size_t c) {
  if (c >= p.candidates()) throw std::invalid_argument("candidate index out of range");
}

json names_of(const PreferenceProfile& p, const CandidateSet& s) {
  json out = json::array();
  for (auto c : s.members()) out.push_back(p.name(c));
  return out;
}

json names_of(const PreferenceProfile& p, const std::vector<Candidate>& cs) {
  json out = json::array();
  for (auto c : cs) out.push_back(p.name(c));
  return out;
}

json voters_of(const VoterSet& s) {
  json out = json::array();
  for (auto i : s.members()) out.push_back(i + 1);
  return out;
}

json matrix_json(const RationalMatrix& m) {
  json out = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& x : row) r.push_back(to_string(x));
    out.push_back(std::move(r));
  }
  return out;
}

json trace_json(const PreferenceProfile& p, const EatingTrace& tr) {
  json events = json::array();
  for (const auto& e : tr.events) {
    events.push_back({{"time", to_string(e.time)}, {"eliminated", names_of(p, e.eliminated)}});
  }
  return {{"events", events},
          {"elapsed", to_string(tr.elapsed)},
          {"survivors", names_of(p, tr.survivors)},
          {"consumption", matrix_json(tr.consumption)}};
}

json matching_json(const PreferenceProfile& p, const Matching& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.assignment.size(); ++i) {
    if (m.assignment[i]) out.push_back({{"voter", i + 1}, {"candidate", p.name(*m.assignment[i])}});
  }
  return out;
}

json audit_json(const AuditReport& r) {
  json records = json::array();
  for (const auto& rec : r.records) {
    json j = {{"instance", rec.instance},
              {"candidate", rec.candidate_name},
              {"fractional_matching", rec.fractional_matching},
              {"veto_core", rec.veto_core},
              {"weak_psc", rec.weak_psc},
              {"solid_veto_core", rec.solid_veto_core},
              {"note", rec.note}};
    j["pareto"] = rec.pareto ? json(*rec.pareto) : json(nullptr);
    records.push_back(std::move(j));
  }
  return {{"instances", r.instances},
          {"candidate_checks", r.candidate_checks},
          {"discrepancies", r.discrepancies()},
          {"flow_vs_veto", r.flow_vs_veto},
          {"psc_vs_flow", r.psc_vs_flow},
          {"pareto_checked", r.pareto_checked},
          {"pareto_discrepancies", r.pareto_discrepancies},
          {"pareto_divergences_n_ne_m", r.pareto_divergences_n_ne_m},
          {"empty_core", r.empty_core},
          {"psc_vs_solid_veto", r.psc_vs_solid_veto},
          {"records", records},
          {"report", format_audit_lines(r)}};
}

void set_flag(int* flag, bool value) {
  require(flag, "result flag");
  *flag = value ? 1 : 0;
}

}  // namespace

extern "C" {

const char* vk_version(void) { return "0.1.0"; }

const char* vk_last_error(void) { return last_error.c_str(); }

void vk_string_free(char* s) { std::free(s); }

vk_status vk_profile_parse(const char* text, vk_profile** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "output pointer");
    *out = new vk_profile{parse_profile(text)};
  });
}

vk_status vk_profile_load(const char* path, vk_profile** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "output pointer");
    *out = new vk_profile{load_profile(path)};
  });
}

void vk_profile_free(vk_profile* p) { delete p; }

vk_status vk_profile_serialize(const vk_profile* p, char** out) {
  return guarded([&] {
    require(p, "profile");
    require(out, "output pointer");
    *out = dup_string(serialize_profile(p->p));
  });
}

vk_status vk_profile_save(const vk_profile* p, const char* path) {
  return guarded([&] {
    require(p, "profile");
    require(path, "path");
    write_text_file(path, serialize_profile(p->p));
  });
}

size_t vk_profile_voters(const vk_profile* p) { return p ? p->p.voters() : 0; }

size_t vk_profile_candidates(const vk_profile* p) { return p ? p->p.candidates() : 0; }

const char* vk_profile_candidate_name(const vk_profile* p, size_t c) {
  if (p == nullptr || c >= p->p.candidates()) return nullptr;
  return p->p.name(c).c_str();
}

vk_status vk_profile_find(const vk_profile* p, const char* name, size_t* out) {
  return guarded([&] {
    require(p, "profile");
    require(name, "name");
    require(out, "output pointer");
    const auto c = p->p.find(name);
    if (!c) throw std::invalid_argument(std::string("unknown candidate '") + name + "'");
    *out = *c;
  });
}

vk_status vk_profile_reverse(const vk_profile* p, vk_profile** out) {
  return guarded([&] {
    require(p, "profile");
    require(out, "output pointer");
    *out = new vk_profile{reverse_profile(p->p)};
  });
}

vk_status vk_gen_impartial_culture(size_t n, size_t m, uint64_t seed, vk_profile** out) {
  return guarded([&] {
    require(out, "output pointer");
    *out = new vk_profile{gen_impartial_culture(n, m, seed)};
  });
}

vk_status vk_gen_euclidean(size_t n, size_t m, uint64_t seed, vk_metric** out) {
  return guarded([&] {
    require(out, "output pointer");
    *out = new vk_metric{gen_euclidean(n, m, seed)};
  });
}

void vk_metric_free(vk_metric* mi) { delete mi; }

vk_status vk_metric_profile(const vk_metric* mi, vk_profile** out) {
  return guarded([&] {
    require(mi, "metric");
    require(out, "output pointer");
    *out = new vk_profile{mi->mi.profile};
  });
}

vk_status vk_metric_serialize(const vk_metric* mi, char** out) {
  return guarded([&] {
    require(mi, "metric");
    require(out, "output pointer");
    *out = dup_string(serialize_metric(mi->mi));
  });
}

vk_status vk_metric_parse(const vk_profile* p, const char* text, vk_metric** out) {
  return guarded([&] {
    require(p, "profile");
    require(text, "text");
    require(out, "output pointer");
    *out = new vk_metric{parse_metric(p->p, text)};
  });
}

int vk_metric_consistent(const vk_metric* mi) { return mi && metric_instance_consistent(mi->mi) ? 1 : 0; }

vk_status vk_metric_social_cost(const vk_metric* mi, size_t c, char** out) {
  return guarded([&] {
    require(mi, "metric");
    require(out, "output pointer");
    check_candidate(mi->mi.profile, c);
    *out = dup_string(to_string(empirical_social_cost(mi->mi, c)));
  });
}

vk_status vk_rule_plurality_veto(const vk_profile* p, const size_t* order, size_t order_len, char** json_out) {
  return guarded([&] {
    require(p, "profile");
    const auto w = plurality_veto(p->p, to_vector(order, order_len));
    emit({{"rule", "plurality-veto"}, {"winner", p->p.name(w)}}, json_out);
  });
}

vk_status vk_rule_veto_by_consumption(const vk_profile* p, int with_trace, char** json_out) {
  return guarded([&] {
    require(p, "profile");
    json j = {{"rule", "veto-consumption"}, {"winners", names_of(p->p, veto_by_consumption_winners(p->p))}};
    if (with_trace) j["trace"] = trace_json(p->p, run_eating(p->p, EatingConfig{}));
    emit(j, json_out);
  });
}

vk_status vk_rule_phragmen(const vk_profile* p, size_t k, const size_t* tie_break, size_t tie_len, int with_trace,
                           char** json_out) {
  return guarded([&] {
    require(p, "profile");
    const auto tb = to_vector(tie_break, tie_len);
    json j = {{"rule", "phragmen"}, {"k", k}, {"committee", names_of(p->p, phragmen_committee(p->p, k, tb))}};
    if (with_trace) {
      EatingConfig cfg{EatDirection::Best, 1, {std::nullopt, k}, tb};
      j["trace"] = trace_json(p->p, run_eating(p->p, cfg));
    }
    emit(j, json_out);
  });
}

vk_status vk_rule_probabilistic_serial(const vk_profile* p, size_t k, int with_trace, char** json_out) {
  return guarded([&] {
    require(p, "profile");
    const auto ps = probabilistic_serial(p->p, k);
    json j = {{"rule", "ps"}, {"k", k}, {"candidates", p->p.names()}, {"assignment", matrix_json(ps.mu)}};
    if (with_trace) {
      EatingConfig cfg{EatDirection::Best, 1, {}, {}};
      Rational horizon(static_cast<long>(k), static_cast<long>(p->p.voters()));
      horizon.canonicalize();
      cfg.stop.at_time = horizon;
      j["trace"] = trace_json(p->p, run_eating(p->p, cfg));
    }
    emit(j, json_out);
  });
}

vk_status vk_rule_serial_dictatorship(const vk_profile* p, const size_t* order, size_t order_len, size_t k,
                                      char** json_out) {
  return guarded([&] {
    require(p, "profile");
    auto sigma = to_vector(order, order_len);
    if (sigma.empty()) sigma = identity_order(p->p.voters());
    emit({{"rule", "serial-dictatorship"}, {"k", k}, {"matching", matching_json(p->p, serial_dictatorship(p->p, sigma, k))}},
         json_out);
  });
}

vk_status vk_rule_random_priority(const vk_profile* p, size_t k, uint64_t seed, size_t samples, char** json_out) {
  return guarded([&] {
    require(p, "profile");
    if (samples == 0) throw std::invalid_argument("samples must be at least 1");
    const auto rp = random_priority(p->p, k, seed, samples);
    emit({{"rule", "random-priority"},
          {"k", k},
          {"samples", samples},
          {"candidates", p->p.names()},
          {"assignment", matrix_json(rp.mu)}},
         json_out);
  });
}

vk_status vk_rule_composite(const vk_profile* p, const size_t* tie_break, size_t tie_len, char** json_out) {
  return guarded([&] {
    require(p, "profile");
    const auto w = composite_distortion_rule(p->p, to_vector(tie_break, tie_len));
    emit({{"rule", "composite"}, {"winner", p->p.name(w)}}, json_out);
  });
}

vk_status vk_plurality_matching_winners(const vk_profile* p, char** json_out) {
  return guarded([&] {
    require(p, "profile");
    emit({{"winners", names_of(p->p, plurality_matching_winners(p->p))}}, json_out);
  });
}

vk_status vk_check_veto_core(const vk_profile* p, size_t c, int* holds, char** json_out) {
  return guarded([&] {
    require(p, "profile");
    check_candidate(p->p, c);
    const auto v = veto_core_member(p->p, c);
    json j = {{"check", "veto-core"}, {"candidate", p->p.name(c)}, {"member", v.member}};
    if (v.witness) {
      j["witness"] = {{"voters", voters_of(v.witness->voters)},
                      {"blocked_by", names_of(p->p, v.witness->blocked_by)},
                      {"veto_power", veto_power(v.witness->voters.size(), p->p.voters(), p->p.candidates())},
                      {"valid", veto_witness_valid(p->p, c, *v.witness)}};
    }
    set_flag(holds, v.member);
    emit(j, json_out);
  });
}

vk_status vk_check_weak_psc(const vk_profile* p, const size_t* committee, size_t len, int* holds, char** json_out) {
  return guarded([&] {
    require(p, "profile");
    CandidateSet w(p->p.candidates());
    for (auto c : to_vector(committee, len)) {
      check_candidate(p->p, c);
      if (w.contains(c)) throw std::invalid_argument("committee lists a candidate twice");
      w.insert(c);
    }
    const auto verdict = weak_psc_satisfied(p->p, w, w.size());
    json j = {{"check", "psc"}, {"committee", names_of(p->p, w)}, {"k", w.size()}, {"satisfied", verdict.satisfied}};
    if (verdict.violation) {
      j["violation"] = {{"prefix_set", names_of(p->p, verdict.violation->prefix_set)},
                        {"supporters", voters_of(verdict.violation->supporters)},
                        {"valid", psc_violation_valid(p->p, w, w.size(), *verdict.violation)}};
    }
    set_flag(holds, verdict.satisfied);
    emit(j, json_out);
  });
}

vk_status vk_check_domination(const vk_profile* p, size_t c, int clone_plurality, int* holds, char** json_out) {
  return guarded([&] {
    require(p, "profile");
    check_candidate(p->p, c);
    json graphs = json::array();
    bool any = false;
    auto test = [&](const PreferenceProfile& prof, Candidate center) {
      const auto g = build_domination_graph(prof, center);
      const bool ok = has_fractional_perfect_matching(g);
      json entry = {{"center", prof.name(center)},
                    {"flow", matching_flow_value(g)},
                    {"target", static_cast<std::int64_t>(g.voters() * g.candidates())},
                    {"perfect", ok}};
      if (!ok) {
        const auto w = extract_deficiency_witness(g);
        entry["witness"] = {{"voters", voters_of(w.voters)},
                            {"dominated", names_of(prof, w.dominated)},
                            {"valid", witness_is_valid(g, w)}};
      }
      any = any || ok;
      graphs.push_back(std::move(entry));
    };
    if (clone_plurality) {
      const auto e = clone_by_plurality(p->p);
      for (auto clone : e.clone_order[c]) test(e.expanded, clone);
    } else {
      test(p->p, c);
    }
    set_flag(holds, any);
    emit({{"check", "domination"},
          {"candidate", p->p.name(c)},
          {"cloned", clone_plurality != 0},
          {"holds", any},
          {"graphs", graphs}},
         json_out);
  });
}

vk_status vk_check_pareto_matching(const vk_profile* p, size_t c, int* holds, char** json_out) {
  return guarded([&] {
    require(p, "profile");
    check_candidate(p->p, c);
    const auto crit = pareto_matching_criterion(p->p, c);
    json j = {{"check", "pareto-matching"},
              {"candidate", p->p.name(c)},
              {"holds", crit.holds},
              {"matching", matching_json(p->p, crit.witness)},
              {"matching_size", crit.witness.size()},
              {"needed", p->p.candidates() - 1}};
    if (const auto sd = pareto_matching_via_serial_dictatorship(p->p, c)) {
      json order = json::array();
      for (auto i : sd->first) order.push_back(i + 1);
      j["serial_dictatorship"] = {{"order", order}, {"matching", matching_json(p->p, sd->second)}};
    }
    set_flag(holds, crit.holds);
    emit(j, json_out);
  });
}

vk_status vk_distortion(const vk_profile* p, size_t c, size_t max_variables, char** json_out) {
  return guarded([&] {
    require(p, "profile");
    check_candidate(p->p, c);
    const auto r = distortion_of_candidate(p->p, c, max_variables == 0 ? kDefaultMaxLpVariables : max_variables);
    json j = {{"candidate", p->p.name(c)},
              {"infinite", r.infinite},
              {"value", r.infinite ? std::string("inf") : to_string(r.value)},
              {"reference", p->p.name(r.reference)},
              {"lp_pivots", r.lp_pivots},
              {"certificate", matrix_json(r.certificate.d)}};
    if (r.ray) j["ray"] = matrix_json(r.ray->d);
    if (r.infinite) {
      j["verified"] = verify_unbounded_certificate(p->p, c, r);
    } else {
      j["verified"] = verify_certificate(p->p, c, r) &&
                      triangle_violations(extend_to_full_pseudometric(r.certificate, ExtensionCheck::None)) == 0;
    }
    emit(j, json_out);
  });
}

vk_status vk_audit_equivalence_exhaustive(size_t n, size_t m, int* clean, char** json_out) {
  return guarded([&] {
    const auto report = equivalence_audit(exhaustive_family(n, m));
    set_flag(clean, report.discrepancies() == 0);
    emit(audit_json(report), json_out);
  });
}

vk_status vk_audit_equivalence_random(size_t trials, size_t nmax, size_t mmax, uint64_t seed, int* clean,
                                      char** json_out) {
  return guarded([&] {
    const auto report = equivalence_audit(random_family(trials, nmax, mmax, seed));
    set_flag(clean, report.discrepancies() == 0);
    emit(audit_json(report), json_out);
  });
}

vk_status vk_audit_equivalence_profile(const vk_profile* p, int* clean, char** json_out) {
  return guarded([&] {
    require(p, "profile");
    const auto report = equivalence_audit({p->p});
    set_flag(clean, report.discrepancies() == 0);
    emit(audit_json(report), json_out);
  });
}

vk_status vk_audit_distortion(size_t trials, size_t nmax, size_t mmax, uint64_t seed, int* clean, char** json_out) {
  return guarded([&] {
    if (nmax * mmax > kDefaultMaxLpVariables) throw SizeLimitError("nmax*mmax exceeds the LP variable cap");
    const auto sweep = distortion_bound_sweep(random_family(trials, nmax, mmax, seed), 4, seed);
    json failures = json::array();
    for (const auto& f : sweep.failures) {
      failures.push_back({{"instance", f.instance},
                          {"rule", f.rule},
                          {"candidate", f.candidate},
                          {"value", f.infinite ? std::string("inf") : to_string(f.value)},
                          {"certificate_ok", f.certificate_ok}});
    }
    set_flag(clean, sweep.failures.empty());
    emit({{"instances", sweep.instances},
          {"checks", sweep.checks},
          {"worst", to_string(sweep.worst)},
          {"failures", failures}},
         json_out);
  });
}

}  // extern "C"
