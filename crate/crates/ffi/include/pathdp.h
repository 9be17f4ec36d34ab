#ifndef PATHDP_H
#define PATHDP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum PathdpStatus {
  PATHDP_STATUS_OK = 0,
  PATHDP_STATUS_NULL_POINTER = -1,
  PATHDP_STATUS_INVALID_ARGUMENT = -2,
  PATHDP_STATUS_INVALID_GRAPH = -3,
  PATHDP_STATUS_IO = -4,
  PATHDP_STATUS_PANIC = -99,
} PathdpStatus;

typedef enum PathdpAlgorithm {
  // Pure counting release, needs `delta = 0`.
  PATHDP_ALGORITHM_CANON = 0,
  // Approximate counting release, needs `delta > 0`.
  PATHDP_ALGORITHM_SSSP = 1,
  // Laplace bottleneck release, needs `delta = 0`.
  PATHDP_ALGORITHM_BOTTLENECK_PURE = 2,
  // Gaussian bottleneck release, needs `delta > 0`.
  PATHDP_ALGORITHM_BOTTLENECK_GAUSS = 3,
} PathdpAlgorithm;

// Graph handle. The all-pairs index is built on first use.
typedef struct PathdpGraph PathdpGraph;

// Released answers for every vertex pair.
typedef struct PathdpRelease PathdpRelease;

// One undirected edge.
typedef struct PathdpEdge {
  uint32_t u;
  uint32_t v;
  // Public weight, defines the shortest paths.
  double weight;
  // Private attribute.
  double attribute;
} PathdpEdge;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds a graph from `m` edges over vertices `0..n`.
//
// # Safety
// `edges` must point to `m` readable edges (it may be null when `m` is 0)
// and `out` must be writable.
enum PathdpStatus pathdp_graph_from_edges(size_t n,
                                          const struct PathdpEdge *edges,
                                          size_t m,
                                          struct PathdpGraph **out);

// Reads a graph from an edge-list file (`u v weight attribute` per line).
//
// # Safety
// `path` must be a NUL-terminated string and `out` must be writable.
enum PathdpStatus pathdp_graph_load(const char *path, struct PathdpGraph **out);

// Releases a graph handle. Null is ignored.
//
// # Safety
// `graph` must come from this library and not be used afterwards.
void pathdp_graph_free(struct PathdpGraph *graph);

// Vertex and edge counts.
//
// # Safety
// `graph` must be a live handle; `n` and `m` must be writable.
enum PathdpStatus pathdp_graph_counts(const struct PathdpGraph *graph, size_t *n, size_t *m);

// Exact attribute sum along the shortest path between `u` and `v`.
//
// # Safety
// `graph` must be a live handle and `out` writable.
enum PathdpStatus pathdp_exact_count(const struct PathdpGraph *graph,
                                     size_t u,
                                     size_t v,
                                     double *out);

// Exact smallest attribute along the shortest path; `+inf` when `u == v`.
//
// # Safety
// `graph` must be a live handle and `out` writable.
enum PathdpStatus pathdp_exact_bottleneck(const struct PathdpGraph *graph,
                                          size_t u,
                                          size_t v,
                                          double *out);

// Runs a private release over all pairs.
//
// `epsilon = +inf` disables noise. `hub_multiplier <= 0` selects the
// algorithm's default; it is ignored by the bottleneck algorithms. The
// same `seed` gives the same release.
//
// # Safety
// `graph` must be a live handle and `out` writable.
enum PathdpStatus pathdp_release(const struct PathdpGraph *graph,
                                 enum PathdpAlgorithm algorithm,
                                 double epsilon,
                                 double delta,
                                 uint64_t seed,
                                 double hub_multiplier,
                                 struct PathdpRelease **out);

// Released value for the pair; symmetric, `0` on the diagonal for counting
// and `+inf` for bottleneck.
//
// # Safety
// `release` must be a live handle and `out` writable.
enum PathdpStatus pathdp_release_get(const struct PathdpRelease *release,
                                     size_t u,
                                     size_t v,
                                     double *out);

// Number of vertices covered by the release.
//
// # Safety
// `release` must be a live handle and `n` writable.
enum PathdpStatus pathdp_release_size(const struct PathdpRelease *release, size_t *n);

// Releases a release handle. Null is ignored.
//
// # Safety
// `release` must come from this library and not be used afterwards.
void pathdp_release_free(struct PathdpRelease *release);

// Message of the last failed call on this thread, or null if none. Valid
// until the next failing call on the same thread.
const char *pathdp_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *pathdp_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PATHDP_H */
