#ifndef SNARKFORGE_H
#define SNARKFORGE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum SnarkStatus {
  SNARK_STATUS_OK = 0,
  SNARK_STATUS_NULL_POINTER = 1,
  SNARK_STATUS_INVALID_ARGUMENT = 2,
  SNARK_STATUS_FORMAT = 3,
  SNARK_STATUS_BUDGET_EXCEEDED = 4,
  SNARK_STATUS_CONSTRUCTION = 5,
  SNARK_STATUS_INTERNAL = 6,
} SnarkStatus;

/**
 * Opaque graph handle.
 */
typedef struct SnarkGraph SnarkGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds `petersen`, `M`, `N`, `Z`, `Y` (level `index`), `H` (level
 * `index`) or `J` with the frozen wiring.
 *
 * # Safety
 * `name` must be a nul-terminated string; `out` must be valid for a write.
 */
enum SnarkStatus snark_build(const char *name, uint32_t index, struct SnarkGraph **out);

/**
 * Parses the JSON graph format.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be valid for a write.
 */
enum SnarkStatus snark_graph_from_json(const char *json, struct SnarkGraph **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `g` must be null or a handle not yet freed.
 */
void snark_graph_free(struct SnarkGraph *g);

/**
 * Number of vertices.
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid for a write.
 */
enum SnarkStatus snark_graph_order(const struct SnarkGraph *g, size_t *out);

/**
 * Canonical JSON; free the result with [`snark_string_free`].
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid for a write.
 */
enum SnarkStatus snark_graph_to_json(const struct SnarkGraph *g, char **out);

/**
 * graph6 (graphs without semi-edges only); free the result with
 * [`snark_string_free`].
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid for a write.
 */
enum SnarkStatus snark_graph_to_graph6(const struct SnarkGraph *g, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void snark_string_free(char *s);

/**
 * Whether the graph has a proper 3-edge-coloring.
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid for a write.
 */
enum SnarkStatus snark_is_colorable(const struct SnarkGraph *g, bool *out);

/**
 * Resistance, or -1 when it exceeds `budget`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid for a write.
 */
enum SnarkStatus snark_resistance(const struct SnarkGraph *g, uint32_t budget, int32_t *out);

/**
 * Flow resistance, or -1 when it exceeds `budget`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid for a write.
 */
enum SnarkStatus snark_flow_resistance(const struct SnarkGraph *g, uint32_t budget, int32_t *out);

/**
 * Whether the graph is cyclically `k`-edge-connected (`k <= 5`).
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid for a write.
 */
enum SnarkStatus snark_cyclically_k_connected(const struct SnarkGraph *g, uint32_t k, bool *out);

/**
 * Message for the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *snark_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SNARKFORGE_H */
