#ifndef SIMCENT_H
#define SIMCENT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SimcentStatus {
  SIMCENT_STATUS_OK = 0,
  SIMCENT_STATUS_NULL_POINTER = 1,
  SIMCENT_STATUS_INVALID_ARGUMENT = 2,
  SIMCENT_STATUS_PARSE_ERROR = 3,
  SIMCENT_STATUS_IO_ERROR = 4,
  SIMCENT_STATUS_INSUFFICIENT_DEPTH = 5,
  SIMCENT_STATUS_LEVEL_OUT_OF_RANGE = 6,
  SIMCENT_STATUS_NUMERICAL_FAILURE = 7,
  SIMCENT_STATUS_LIMIT_EXCEEDED = 8,
  SIMCENT_STATUS_BUFFER_TOO_SMALL = 9,
  SIMCENT_STATUS_PANIC = 10,
} SimcentStatus;

typedef enum SimcentFamily {
  // `l` k-simplices sharing one face; params `l, k`.
  SIMCENT_FAMILY_STAR = 0,
  // Central k-simplex with arms; params `k, x0, .., xk`.
  SIMCENT_FAMILY_BRANCHED = 1,
  // Chain of `l` k-simplices; params `l, k`.
  SIMCENT_FAMILY_PATH = 2,
} SimcentFamily;

typedef enum SimcentMeasure {
  SIMCENT_MEASURE_DEGREE = 0,
  SIMCENT_MEASURE_CLOSENESS = 1,
  SIMCENT_MEASURE_HARMONIC = 2,
  SIMCENT_MEASURE_BETWEENNESS = 3,
  SIMCENT_MEASURE_KATZ = 4,
  SIMCENT_MEASURE_EIGENVECTOR = 5,
  SIMCENT_MEASURE_SUBGRAPH = 6,
} SimcentMeasure;

// Opaque clique complex.
typedef struct SimcentComplex SimcentComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds the clique complex of the graph with `n_nodes` nodes (0-based)
// and edges `sources[i] -- targets[i]`, up to dimension `max_level`.
//
// # Safety
// `sources` and `targets` must each point to `n_edges` readable values;
// `out` must be writable.
enum SimcentStatus simcent_complex_from_edges(const uint32_t *sources,
                                              const uint32_t *targets,
                                              size_t n_edges,
                                              size_t n_nodes,
                                              size_t max_level,
                                              struct SimcentComplex **out);

// Reads an edge-list file (two labels per line, `#` comments).
//
// # Safety
// `path` must be a NUL-terminated string; `out` must be writable.
enum SimcentStatus simcent_complex_from_file(const char *path,
                                             size_t max_level,
                                             struct SimcentComplex **out);

// Builds a synthetic family complex, materialized one level above the
// family's dimension.
//
// # Safety
// `params` must point to `n_params` readable values; `out` must be writable.
enum SimcentStatus simcent_complex_generate(enum SimcentFamily family,
                                            const size_t *params,
                                            size_t n_params,
                                            struct SimcentComplex **out);

// Releases a complex. Null is ignored.
//
// # Safety
// `complex` must be null or a handle from this library not yet freed.
void simcent_complex_free(struct SimcentComplex *complex);

// Highest materialized dimension, or 0 for a null handle.
//
// # Safety
// `complex` must be null or a live handle.
size_t simcent_complex_max_level(const struct SimcentComplex *complex);

// Number of simplices at `level`.
//
// # Safety
// `complex` must be a live handle and `out` writable.
enum SimcentStatus simcent_complex_count(const struct SimcentComplex *complex,
                                         size_t level,
                                         size_t *out);

// Writes the `level + 1` node indices of simplex `id` into `vertices`.
//
// # Safety
// `complex` must be a live handle; `vertices` must have room for
// `capacity` values.
enum SimcentStatus simcent_complex_simplex(const struct SimcentComplex *complex,
                                           size_t level,
                                           size_t id,
                                           size_t *vertices,
                                           size_t capacity);

// Number of adjacent pairs of the combined adjacency at `level`.
//
// # Safety
// `complex` must be a live handle and `out` writable.
enum SimcentStatus simcent_interaction_count(const struct SimcentComplex *complex,
                                             size_t level,
                                             size_t *out);

// Scores of `measure` for every simplex at `level`, written to `scores`.
// `alpha` is the Katz damping; pass 0 or NaN for the default. `normalized`
// applies to closeness and betweenness. `written` receives the number of
// simplices, also when the buffer is too small.
//
// # Safety
// `complex` must be a live handle; `scores` must have room for `capacity`
// values; `written` must be null or writable.
enum SimcentStatus simcent_centrality(const struct SimcentComplex *complex,
                                      size_t level,
                                      enum SimcentMeasure measure,
                                      double alpha,
                                      int normalized,
                                      double *scores,
                                      size_t capacity,
                                      size_t *written);

// Message of the last failed call on this thread, or null. The pointer is
// valid until the next call into this library on the same thread.
const char *simcent_last_error(void);

// Library version as a static NUL-terminated string.
const char *simcent_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SIMCENT_H */
