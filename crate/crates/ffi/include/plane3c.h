#ifndef PLANE3C_H
#define PLANE3C_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of a library call.
typedef enum p3c_status {
  P3C_STATUS_OK = 0,
  P3C_STATUS_NULL_ARGUMENT = 1,
  P3C_STATUS_INVALID_UTF8 = 2,
  P3C_STATUS_PARSE = 3,
  P3C_STATUS_GENERATE = 4,
  P3C_STATUS_INVALID_COLORING = 5,
  P3C_STATUS_PRECONDITION = 6,
  P3C_STATUS_UNEXTENDABLE = 7,
  P3C_STATUS_REFUTED = 8,
  P3C_STATUS_INTERNAL = 9,
} p3c_status;

// Coloring method for [`p3c_color`].
typedef enum p3c_method {
  // Exhaustive backtracking.
  P3C_METHOD_ORACLE = 0,
  // Reduction-guided coloring; needs a good outer boundary.
  P3C_METHOD_PROOF = 1,
  // `Proof` when its precondition holds, otherwise `Oracle`.
  P3C_METHOD_AUTO = 2,
} p3c_method;

// Opaque graph handle.
typedef struct p3c_graph p3c_graph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. The pointer
// stays valid until the next library call on the same thread.
const char *p3c_last_error(void);

// Releases a string returned by the library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void p3c_string_free(char *s);

// Parses the text format into a new graph.
//
// # Safety
// `input` must be a nul-terminated string and `out` writable.
enum p3c_status p3c_graph_parse(const char *input, struct p3c_graph **out);

// Builds a graph from a generator spec such as `"g1"`, `"cycle 9"` or
// `"random-class 7 18"`.
//
// # Safety
// `spec` must be a nul-terminated string and `out` writable.
enum p3c_status p3c_graph_generate(const char *spec, struct p3c_graph **out);

// Releases a graph. Null is ignored.
//
// # Safety
// `g` must come from this library and not be freed twice.
void p3c_graph_free(struct p3c_graph *g);

// Vertex, edge and face counts. Any output may be null.
//
// # Safety
// `g` must be a live handle; non-null outputs must be writable.
enum p3c_status p3c_graph_counts(const struct p3c_graph *g,
                                 size_t *vertices,
                                 size_t *edges,
                                 size_t *faces);

// Prints the graph in the text format.
//
// # Safety
// `g` must be a live handle and `out` writable.
enum p3c_status p3c_graph_to_text(const struct p3c_graph *g, char **out);

// Writes whether the graph lies in the class. When it does not and
// `reason` is non-null, a description of the first violation is written
// there; otherwise `*reason` is set to null.
//
// # Safety
// `g` must be a live handle, `in_class` writable and `reason` null or
// writable.
enum p3c_status p3c_class_check(const struct p3c_graph *g, bool *in_class, char **reason);

// Runs the discharging audit. `ok` is true when charge is conserved and
// no element other than the outer face ends negative. `report`, if
// non-null, receives the full text report.
//
// # Safety
// `g` must be a live handle, `ok` writable and `report` null or writable.
enum p3c_status p3c_discharge(const struct p3c_graph *g, bool *ok, char **report);

// Extends `precoloring` (text lines `v=c`; null means none) to a proper
// 3-coloring. On success `out` receives the coloring in the same format.
// Returns `Unextendable` when no extension exists.
//
// # Safety
// `g` must be a live handle, `precoloring` null or nul-terminated, and
// `out` writable.
enum p3c_status p3c_color(const struct p3c_graph *g,
                          const char *precoloring,
                          enum p3c_method method,
                          char **out);

// Checks every boundary coloring of a good outer cycle for an extension.
// Writes the number of colorings checked and of those that failed. A
// boundary that is not a good cycle gives `Precondition`.
//
// # Safety
// `g` must be a live handle; `checked` and `violations` writable.
enum p3c_status p3c_extension_check(const struct p3c_graph *g, size_t *checked, size_t *violations);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PLANE3C_H */
