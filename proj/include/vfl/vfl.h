#ifndef VFL_VFL_H
#define VFL_VFL_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define VFL_API __attribute__((visibility("default")))
#else
#define VFL_API
#endif

/* Exit-code compatible status values. */
typedef enum vfl_status {
  VFL_OK = 0,
  VFL_NEGATIVE = 1, /* valid negative answer: not closed, infeasible, failed check */
  VFL_USAGE = 2,    /* bad input, parse error, unsupported request */
  VFL_INTERNAL = 3  /* internal assertion */
} vfl_status;

typedef struct vfl_context vfl_context;
typedef struct vfl_algebra vfl_algebra;

/*
 * Every char** out parameter receives a malloc'ed UTF-8 JSON document (or
 * NULL on USAGE/INTERNAL); release it with vfl_string_free. On NEGATIVE the
 * document describes the negative answer. vfl_last_error holds the message
 * of the last failing call on the context.
 */

VFL_API const char* vfl_version(void);
VFL_API void vfl_string_free(char* s);

VFL_API vfl_context* vfl_context_new(void);
VFL_API void vfl_context_free(vfl_context* ctx);
VFL_API const char* vfl_last_error(const vfl_context* ctx);
VFL_API void vfl_set_seed(vfl_context* ctx, uint64_t seed);
VFL_API vfl_status vfl_set_precision(vfl_context* ctx, unsigned digits);
/* Polynomial degree and frequency list "l1;l2;..." with each l a
   comma-separated vector ("0;1,0"); NULL or "" means {0}. */
VFL_API vfl_status vfl_set_ansatz(vfl_context* ctx, unsigned degree, const char* freqs);

/* Single fields. */
VFL_API vfl_status vfl_parse_field(vfl_context* ctx, size_t dim, const char* text, char** out);
VFL_API vfl_status vfl_bracket(vfl_context* ctx, size_t dim, const char* a, const char* b, char** out);
/* NEGATIVE when the span is not closed. */
VFL_API vfl_status vfl_closure(vfl_context* ctx, size_t dim, const char* const* fields, size_t count, char** out);

/* Algebra handles. NEGATIVE (with closure JSON in *closure when non-NULL)
   when the fields do not span a Lie algebra. */
VFL_API vfl_status vfl_algebra_from_fields(vfl_context* ctx, size_t dim, const char* const* fields, size_t count,
                                           vfl_algebra** out, char** closure);
VFL_API vfl_status vfl_algebra_from_fixture(vfl_context* ctx, const char* name, vfl_algebra** out);
VFL_API void vfl_algebra_free(vfl_algebra* a);
VFL_API size_t vfl_algebra_dim(const vfl_algebra* a);
VFL_API size_t vfl_algebra_ambient(const vfl_algebra* a);

VFL_API vfl_status vfl_sc(vfl_context* ctx, const vfl_algebra* a, char** out);
VFL_API vfl_status vfl_killing(vfl_context* ctx, const vfl_algebra* a, char** out);
VFL_API vfl_status vfl_flags(vfl_context* ctx, const vfl_algebra* a, char** out);
VFL_API vfl_status vfl_radical(vfl_context* ctx, const vfl_algebra* a, char** out);
/* S given as fields inside the algebra; R is the computed radical.
   NEGATIVE when a check fails. */
VFL_API vfl_status vfl_levi_check(vfl_context* ctx, const vfl_algebra* a, const char* const* s, size_t count,
                                  char** out);
VFL_API vfl_status vfl_cartan(vfl_context* ctx, const vfl_algebra* a, char** out);
VFL_API vfl_status vfl_roots(vfl_context* ctx, const vfl_algebra* a, char** out);
VFL_API vfl_status vfl_type(vfl_context* ctx, const vfl_algebra* a, char** out);
VFL_API vfl_status vfl_georank(vfl_context* ctx, const vfl_algebra* a, char** out);
VFL_API vfl_status vfl_rank_equality(vfl_context* ctx, const vfl_algebra* a, char** out);
VFL_API vfl_status vfl_chevalley(vfl_context* ctx, const vfl_algebra* a, char** out);
VFL_API vfl_status vfl_chevalley_constants(vfl_context* ctx, const char* type, char** out);
/* Highest weight vectors of the context ansatz modulo the algebra. */
VFL_API vfl_status vfl_hw_search(vfl_context* ctx, const vfl_algebra* a, char** out);
/* Staged extension to `target` over the context ansatz. `embedding` is a
   JSON list [{"root": [..], "e": "..", "f": ".."}]; NULL uses the
   embedding shipped with a fixture algebra. NEGATIVE when infeasible. */
VFL_API vfl_status vfl_extend(vfl_context* ctx, const vfl_algebra* a, const char* target, const char* embedding,
                              char** out);

VFL_API vfl_status vfl_fixture_list(vfl_context* ctx, char** out);
VFL_API vfl_status vfl_fixture_show(vfl_context* ctx, const char* name, char** out);
/* Shell-style filter; NULL means all. NEGATIVE when a fixture fails. */
VFL_API vfl_status vfl_fixture_verify(vfl_context* ctx, const char* filter, char** out);

/* Library acceptance criteria; NEGATIVE when one fails. */
VFL_API vfl_status vfl_verify_paper(vfl_context* ctx, char** out);

#ifdef __cplusplus
}
#endif

#endif
