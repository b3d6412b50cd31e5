#ifndef REGLOC_H
#define REGLOC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/*
 Status codes. The first four match the CLI exit codes.
 */
typedef enum RlStatus {
  RL_STATUS_OK = 0,
  RL_STATUS_VERIFICATION_FAILED = 1,
  RL_STATUS_INPUT_ERROR = 2,
  RL_STATUS_CUTOFF = 3,
  RL_STATUS_NULL_POINTER = 4,
  RL_STATUS_INVALID_UTF8 = 5,
  RL_STATUS_PANIC = 6,
} RlStatus;

typedef struct RlCertificate RlCertificate;

typedef struct RlGenerator RlGenerator;

typedef struct RlLocus RlLocus;

typedef struct RlModule RlModule;

typedef struct RlRing RlRing;

/*
 Message for the last failed call on this thread, or NULL. Valid until
 the next `rl_*` call on the same thread.
 */
const char *rl_last_error(void);

/*
 # Safety
 `s` must come from this library or be NULL.
 */
void rl_string_free(char *s);

/*
 Parses `K[vars]/(g1,...)`.

 # Safety
 `src` must be a NUL-terminated string; `out` must be writable.
 */
enum RlStatus rl_ring_parse(const char *src, struct RlRing **out);

/*
 # Safety
 `ring` must come from `rl_ring_parse` or be NULL.
 */
void rl_ring_free(struct RlRing *ring);

/*
 Krull dimension.

 # Safety
 Valid handle and output pointer.
 */
enum RlStatus rl_ring_dim(const struct RlRing *ring, int64_t *out);

/*
 Parses one `module NAME over RING gens K relations [...]` definition.

 # Safety
 `src` must be a NUL-terminated string; `out` must be writable.
 */
enum RlStatus rl_module_parse(const char *src, struct RlModule **out);

/*
 # Safety
 `module` must come from `rl_module_parse` or be NULL.
 */
void rl_module_free(struct RlModule *module);

/*
 # Safety
 Valid handle and output pointer.
 */
enum RlStatus rl_singular_locus(const struct RlRing *ring, struct RlLocus **out);

/*
 # Safety
 Valid handle and output pointer.
 */
enum RlStatus rl_nonperf_locus(const struct RlModule *module, struct RlLocus **out);

/*
 # Safety
 Valid handle and output pointer.
 */
enum RlStatus rl_locus_is_empty(const struct RlLocus *locus, bool *out);

/*
 Whether `a ⊆ b` as closed sets.

 # Safety
 Valid handles and output pointer.
 */
enum RlStatus rl_locus_contained_in(const struct RlLocus *a, const struct RlLocus *b, bool *out);

/*
 Generators of the defining ideal, comma separated.

 # Safety
 Valid handle and output pointer; free the string with `rl_string_free`.
 */
enum RlStatus rl_locus_to_string(const struct RlLocus *locus, char **out);

/*
 # Safety
 `locus` must come from this library or be NULL.
 */
void rl_locus_free(struct RlLocus *locus);

/*
 Builds the generator of `mod R`. `primes` is NULL or a list like
 `"(x);(y)"` of the minimal primes of `R`.

 # Safety
 Valid handle, optional NUL-terminated string, writable output.
 */
enum RlStatus rl_generator_build(const struct RlRing *ring,
                                 const char *primes,
                                 struct RlGenerator **out);

/*
 Number of summands of the generator.

 # Safety
 Valid handle and output pointer.
 */
enum RlStatus rl_generator_summand_count(const struct RlGenerator *g, uintptr_t *out);

/*
 # Safety
 Valid handle and output pointer.
 */
enum RlStatus rl_generator_depth(const struct RlGenerator *g, uintptr_t *out);

/*
 # Safety
 `g` must come from this library or be NULL.
 */
void rl_generator_free(struct RlGenerator *g);

/*
 Certificate that `module` lies in the thick closure of `g`.

 # Safety
 Valid handles and output pointer.
 */
enum RlStatus rl_certify(const struct RlModule *module,
                         const struct RlGenerator *g,
                         struct RlCertificate **out);

/*
 # Safety
 `src` must be a NUL-terminated string; `out` must be writable.
 */
enum RlStatus rl_certificate_from_json(const char *src, struct RlCertificate **out);

/*
 # Safety
 Valid handle and output pointer; free the string with `rl_string_free`.
 */
enum RlStatus rl_certificate_to_json(const struct RlCertificate *c, char **out);

/*
 Re-verifies a certificate. Returns `RL_STATUS_VERIFICATION_FAILED` when a
 step fails; `fail_step` (may be NULL) receives its index, or -1.

 # Safety
 Valid handle; `fail_step` writable or NULL.
 */
enum RlStatus rl_certificate_check(const struct RlCertificate *c, int64_t *fail_step);

/*
 # Safety
 `c` must come from this library or be NULL.
 */
void rl_certificate_free(struct RlCertificate *c);

#endif  /* REGLOC_H */
