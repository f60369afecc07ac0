#ifndef WPO_H
#define WPO_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible entry point.
 */
typedef enum WpoStatus {
  WPO_STATUS_OK = 0,
  WPO_STATUS_NULL_POINTER = 1,
  WPO_STATUS_INVALID_ARGUMENT = 2,
  WPO_STATUS_NOT_A_TREE = 3,
  /**
   * no proper orientation exists
   */
  WPO_STATUS_INFEASIBLE = 4,
  /**
   * instance exceeds a solver's size precondition
   */
  WPO_STATUS_TOO_LARGE = 5,
} WpoStatus;

/**
 * Opaque weighted graph handle.
 */
typedef struct wpo_graph wpo_graph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Build a graph from `m` edges given as parallel arrays of 0-indexed
 * endpoints and positive weights. On success writes a fresh handle to
 * `out`.
 *
 * # Safety
 * `tails`, `heads`, `weights` must point to `m` readable elements and
 * `out` must be a valid out-pointer.
 */
enum WpoStatus wpo_graph_create(uintptr_t n,
                                uintptr_t m,
                                const uintptr_t *tails,
                                const uintptr_t *heads,
                                const uint64_t *weights,
                                struct wpo_graph **out);

/**
 * Release a handle created by `wpo_graph_create`. Null is a no-op.
 *
 * # Safety
 * `g` must be a live handle from this library, not yet freed.
 */
void wpo_graph_free(struct wpo_graph *g);

/**
 * Exact solve for trees. Writes the optimum to `out_po` and, if
 * `out_heads` is non-null, the head vertex of each edge (edge order of
 * creation) to `out_heads[0..m]`.
 *
 * # Safety
 * `g` must be a live handle; `out_heads`, when non-null, must have
 * room for `m` elements.
 */
enum WpoStatus wpo_tree_po(const struct wpo_graph *g, uint64_t *out_po, uintptr_t *out_heads);

/**
 * Exact solve via the treewidth dynamic program with a heuristic
 * decomposition. Same output contract as `wpo_tree_po`.
 *
 * # Safety
 * Same contract as `wpo_tree_po`.
 */
enum WpoStatus wpo_twdp_po(const struct wpo_graph *g, uint64_t *out_po, uintptr_t *out_heads);

/**
 * Exhaustive solve, limited to 22 edges. Same output contract as
 * `wpo_tree_po`.
 *
 * # Safety
 * Same contract as `wpo_tree_po`.
 */
enum WpoStatus wpo_brute_force_po(const struct wpo_graph *g,
                                  uint64_t *out_po,
                                  uintptr_t *out_heads);

/**
 * Check an orientation given as per-edge head vertices: writes 1 to
 * `out_proper` iff adjacent inweights are all distinct, and the
 * maximum inweight to `out_mu`.
 *
 * # Safety
 * `heads` must point to `m` readable elements, each an endpoint of the
 * corresponding edge.
 */
enum WpoStatus wpo_verify(const struct wpo_graph *g,
                          const uintptr_t *heads,
                          int32_t *out_proper,
                          uint64_t *out_mu);

/**
 * Human-readable description of a status code. Returns a static
 * NUL-terminated string.
 */
const char *wpo_status_message(enum WpoStatus status);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* WPO_H */
