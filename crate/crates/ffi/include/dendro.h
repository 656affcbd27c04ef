#ifndef DENDRO_H
#define DENDRO_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes of the C API.
 */
typedef enum DendroStatus {
  /**
   * The call succeeded.
   */
  DendroStatus_Ok = 0,
  /**
   * A pointer argument was null or otherwise unusable.
   */
  DendroStatus_InvalidArgument = 1,
  /**
   * Text input failed to parse or validate.
   */
  DendroStatus_ParseError = 2,
  /**
   * The certificate search ended without a certificate.
   */
  DendroStatus_NotFound = 3,
  /**
   * Certificate replay failed.
   */
  DendroStatus_VerifyFailed = 4,
} DendroStatus;

/**
 * An owned inner-anodyne certificate handle.
 */
typedef struct DendroCertificate DendroCertificate;

/**
 * An owned subobject (sieve) handle.
 */
typedef struct DendroSubobject DendroSubobject;

/**
 * An owned tree handle.
 */
typedef struct DendroTree DendroTree;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The last error message raised on this thread, or null. Free with
 * `dendro_string_free`.
 */
char *dendro_last_error_message(void);

/**
 * Frees a string returned by this library. Null is allowed.
 *
 * # Safety
 * `s` must have been returned by this library and not freed before.
 */
void dendro_string_free(char *s);

/**
 * Parses a tree literal such as `"r(a(x,y),b())"`.
 *
 * # Safety
 * `literal` must be a NUL-terminated string and `out` a valid pointer.
 */
enum DendroStatus dendro_tree_parse(const char *literal, struct DendroTree **out);

/**
 * The tree rendered in the literal grammar.
 *
 * # Safety
 * `tree` must be a live handle from this library.
 */
char *dendro_tree_literal(const struct DendroTree *tree);

/**
 * Stable text key of the isomorphism class (the canonical literal).
 *
 * # Safety
 * `tree` must be a live handle from this library.
 */
char *dendro_tree_canonical_key(const struct DendroTree *tree);

/**
 * # Safety
 * `tree` must be a live handle from this library.
 */
uintptr_t dendro_tree_vertex_count(const struct DendroTree *tree);

/**
 * # Safety
 * `tree` must be a live handle from this library.
 */
uintptr_t dendro_tree_edge_count(const struct DendroTree *tree);

/**
 * Order of the automorphism group.
 *
 * # Safety
 * `tree` must be a live handle from this library.
 */
uintptr_t dendro_tree_automorphism_count(const struct DendroTree *tree);

/**
 * # Safety
 * `tree` must be a handle from this library or null; it is consumed.
 */
void dendro_tree_free(struct DendroTree *tree);

/**
 * The Segal core: the union of the single-vertex and single-edge faces.
 *
 * # Safety
 * `tree` must be a live handle and `out` a valid pointer.
 */
enum DendroStatus dendro_subobject_core(const struct DendroTree *tree,
                                        struct DendroSubobject **out);

/**
 * The boundary: every proper face.
 *
 * # Safety
 * `tree` must be a live handle and `out` a valid pointer.
 */
enum DendroStatus dendro_subobject_boundary(const struct DendroTree *tree,
                                            struct DendroSubobject **out);

/**
 * The external boundary.
 *
 * # Safety
 * `tree` must be a live handle and `out` a valid pointer.
 */
enum DendroStatus dendro_subobject_external_boundary(const struct DendroTree *tree,
                                                     struct DendroSubobject **out);

/**
 * The inner horn at the named inner edge.
 *
 * # Safety
 * `tree` must be a live handle, `edge` a NUL-terminated string, `out` a
 * valid pointer.
 */
enum DendroStatus dendro_subobject_inner_horn(const struct DendroTree *tree,
                                              const char *edge,
                                              struct DendroSubobject **out);

/**
 * Number of member faces.
 *
 * # Safety
 * `sub` must be a live handle from this library.
 */
uintptr_t dendro_subobject_size(const struct DendroSubobject *sub);

/**
 * The subobject in its documented JSON wire format.
 *
 * # Safety
 * `sub` must be a live handle from this library.
 */
char *dendro_subobject_to_json(const struct DendroSubobject *sub);

/**
 * # Safety
 * `sub` must be a handle from this library or null; it is consumed.
 */
void dendro_subobject_free(struct DendroSubobject *sub);

/**
 * Searches for an inner-anodyne certificate from the subobject to the full
 * representable on the same tree. Returns `NotFound` when the pushout
 * search exhausts without one (which does not prove non-anodyneness).
 *
 * # Safety
 * `start` must be a live handle and `out` a valid pointer.
 */
enum DendroStatus dendro_certify(const struct DendroSubobject *start,
                                 struct DendroCertificate **out);

/**
 * Number of expansion steps.
 *
 * # Safety
 * `certificate` must be a live handle from this library.
 */
uintptr_t dendro_certificate_len(const struct DendroCertificate *certificate);

/**
 * The certificate in its documented JSON wire format.
 *
 * # Safety
 * `certificate` must be a live handle from this library.
 */
char *dendro_certificate_to_json(const struct DendroCertificate *certificate);

/**
 * Parses a certificate from its JSON wire format.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum DendroStatus dendro_certificate_parse_json(const char *json, struct DendroCertificate **out);

/**
 * Replays the certificate; `Ok` iff every step checks out and the replay
 * reaches the recorded end.
 *
 * # Safety
 * `certificate` must be a live handle from this library.
 */
enum DendroStatus dendro_certificate_verify(const struct DendroCertificate *certificate);

/**
 * # Safety
 * `certificate` must be a handle from this library or null; it is consumed.
 */
void dendro_certificate_free(struct DendroCertificate *certificate);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DENDRO_H */
