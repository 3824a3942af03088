#ifndef VETOKIT_VETOKIT_H
#define VETOKIT_VETOKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(VK_BUILDING_LIBRARY)
#define VK_API __attribute__((visibility("default")))
#else
#define VK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vk_status {
  VK_OK = 0,
  VK_E_PARSE = 1,    /* malformed profile or sidecar text */
  VK_E_ARGUMENT = 2, /* bad argument: unknown candidate, bad order, k out of range */
  VK_E_RESOURCE = 3, /* configured size cap exceeded, or out of memory */
  VK_E_IO = 4,       /* file could not be read or written */
  VK_E_INTERNAL = 5
} vk_status;

typedef struct vk_profile vk_profile;
typedef struct vk_metric vk_metric;

VK_API const char* vk_version(void);

/* Message for the most recent failing call on this thread; "" after a
   successful call. Owned by the library. */
VK_API const char* vk_last_error(void);

/* Every char** output is allocated by the library and released here. */
VK_API void vk_string_free(char* s);

/* Profiles */

VK_API vk_status vk_profile_parse(const char* text, vk_profile** out);
VK_API vk_status vk_profile_load(const char* path, vk_profile** out);
VK_API void vk_profile_free(vk_profile* p);
VK_API vk_status vk_profile_serialize(const vk_profile* p, char** out);
VK_API vk_status vk_profile_save(const vk_profile* p, const char* path);
VK_API size_t vk_profile_voters(const vk_profile* p);
VK_API size_t vk_profile_candidates(const vk_profile* p);
/* NULL when c is out of range. Owned by the profile. */
VK_API const char* vk_profile_candidate_name(const vk_profile* p, size_t c);
VK_API vk_status vk_profile_find(const vk_profile* p, const char* name, size_t* out);
VK_API vk_status vk_profile_reverse(const vk_profile* p, vk_profile** out);

/* Generators, deterministic per seed */

VK_API vk_status vk_gen_impartial_culture(size_t n, size_t m, uint64_t seed, vk_profile** out);
VK_API vk_status vk_gen_euclidean(size_t n, size_t m, uint64_t seed, vk_metric** out);
VK_API void vk_metric_free(vk_metric* mi);
/* A copy of the induced profile. */
VK_API vk_status vk_metric_profile(const vk_metric* mi, vk_profile** out);
VK_API vk_status vk_metric_serialize(const vk_metric* mi, char** out);
VK_API vk_status vk_metric_parse(const vk_profile* p, const char* text, vk_metric** out);
VK_API int vk_metric_consistent(const vk_metric* mi);
/* Social cost of candidate c as "p/q". */
VK_API vk_status vk_metric_social_cost(const vk_metric* mi, size_t c, char** out);

/* Rules. Results are JSON objects; rationals are "p/q" strings, candidates
   are labels, voters are 1-based integers. Orders are 0-based voter
   indices; tie-break orders are 0-based candidate indices. A NULL order
   (length 0) selects the default. */

VK_API vk_status vk_rule_plurality_veto(const vk_profile* p, const size_t* order, size_t order_len,
                                        char** json);
VK_API vk_status vk_rule_veto_by_consumption(const vk_profile* p, int with_trace, char** json);
VK_API vk_status vk_rule_phragmen(const vk_profile* p, size_t k, const size_t* tie_break, size_t tie_len,
                                  int with_trace, char** json);
VK_API vk_status vk_rule_probabilistic_serial(const vk_profile* p, size_t k, int with_trace, char** json);
VK_API vk_status vk_rule_serial_dictatorship(const vk_profile* p, const size_t* order, size_t order_len,
                                             size_t k, char** json);
VK_API vk_status vk_rule_random_priority(const vk_profile* p, size_t k, uint64_t seed, size_t samples,
                                         char** json);
VK_API vk_status vk_rule_composite(const vk_profile* p, const size_t* tie_break, size_t tie_len, char** json);
VK_API vk_status vk_plurality_matching_winners(const vk_profile* p, char** json);

/* Checks. *holds is 1 when the property holds, 0 when violated (the JSON
   then carries a witness). */

VK_API vk_status vk_check_veto_core(const vk_profile* p, size_t c, int* holds, char** json);
/* Weak Droop PSC of the committee (|committee| = k) on p as given. */
VK_API vk_status vk_check_weak_psc(const vk_profile* p, const size_t* committee, size_t len, int* holds,
                                   char** json);
/* Fractional perfect matching in the domination graph of c. With
   clone_plurality, the graphs of c's clones in the plurality-cloned
   instance are tested and the check holds if any clone passes. */
VK_API vk_status vk_check_domination(const vk_profile* p, size_t c, int clone_plurality, int* holds,
                                     char** json);
VK_API vk_status vk_check_pareto_matching(const vk_profile* p, size_t c, int* holds, char** json);

/* Distortion. VK_E_RESOURCE when n*m exceeds max_variables (0 selects the
   default cap of 100). */

VK_API vk_status vk_distortion(const vk_profile* p, size_t c, size_t max_variables, char** json);

/* Audits. *clean is 1 when nothing was found. */

VK_API vk_status vk_audit_equivalence_exhaustive(size_t n, size_t m, int* clean, char** json);
VK_API vk_status vk_audit_equivalence_random(size_t trials, size_t nmax, size_t mmax, uint64_t seed,
                                             int* clean, char** json);
VK_API vk_status vk_audit_equivalence_profile(const vk_profile* p, int* clean, char** json);
VK_API vk_status vk_audit_distortion(size_t trials, size_t nmax, size_t mmax, uint64_t seed, int* clean,
                                     char** json);

#ifdef __cplusplus
}
#endif

#endif
