#ifndef HATGUESS_H
#define HATGUESS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes. The nonzero library codes match the command-line exit codes.
typedef enum HgStatus {
  HG_STATUS_OK = 0,
  // A search exceeded its node or time budget.
  HG_STATUS_BUDGET = 2,
  // Malformed input or a violated precondition.
  HG_STATUS_INPUT = 3,
  // An internal claim check failed.
  HG_STATUS_CLAIM_VIOLATION = 4,
  // A required pointer argument was null.
  HG_STATUS_NULL_ARGUMENT = 5,
  // A panic was caught at the boundary.
  HG_STATUS_PANIC = 6,
} HgStatus;

// An undirected simple graph.
typedef struct HgGraph HgGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *hg_version(void);

// Message for the most recent failure on this thread, empty after a
// success. Valid until the next call on the same thread.
const char *hg_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void hg_string_free(char *s);

// Parses a graph6 string.
//
// # Safety
// `text_g6` must be a NUL-terminated string and `out` writable.
enum HgStatus hg_graph_from_graph6(const char *text_g6, struct HgGraph **out);

// Parses a graph JSON document.
//
// # Safety
// `json` must be a NUL-terminated string and `out` writable.
enum HgStatus hg_graph_from_json(const char *json, struct HgGraph **out);

// Builds a graph on `n` vertices from `m` edges stored as `2m` endpoints.
//
// # Safety
// `edges` must point to `2 * m` readable values (or be null when `m` is 0)
// and `out` must be writable.
enum HgStatus hg_graph_from_edges(size_t n, const size_t *edges, size_t m, struct HgGraph **out);

// Releases a graph. Null is ignored.
//
// # Safety
// `g` must come from this library and not have been freed.
void hg_graph_free(struct HgGraph *g);

// Vertex count, 0 for null.
//
// # Safety
// `g` must be null or a live graph.
size_t hg_graph_vertex_count(const struct HgGraph *g);

// Edge count, 0 for null.
//
// # Safety
// `g` must be null or a live graph.
size_t hg_graph_edge_count(const struct HgGraph *g);

// Writes the graph6 encoding to `*out`.
//
// # Safety
// `g` must be a live graph and `out` writable.
enum HgStatus hg_graph_to_graph6(const struct HgGraph *g, char **out);

// Writes the JSON document to `*out`.
//
// # Safety
// `g` must be a live graph and `out` writable.
enum HgStatus hg_graph_to_json(const struct HgGraph *g, char **out);

// Exact hat guessing number with `s` guesses, searching `k` up to `cap`.
// `max_nodes` of 0 means the default budget.
//
// # Safety
// `g` must be a live graph and `out` writable.
enum HgStatus hg_solve_exact(const struct HgGraph *g,
                             uint32_t s,
                             uint32_t cap,
                             uint64_t max_nodes,
                             uint32_t *out);

// Whether the players win with `k` colors per vertex and `s` guesses.
//
// # Safety
// `g` must be a live graph and `out` writable.
enum HgStatus hg_players_win(const struct HgGraph *g,
                             uint32_t k,
                             uint32_t s,
                             uint64_t max_nodes,
                             bool *out);

// Runs a command-line invocation (without the program name) and writes
// its JSON output to `*out_json` and its exit code to `*out_code`. The
// status reflects the exit code; the diagnostics go to `hg_last_error`.
//
// # Safety
// `argv` must point to `argc` NUL-terminated strings; both out-parameters
// must be writable.
enum HgStatus hg_run(size_t argc, const char *const *argv, char **out_json, int *out_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HATGUESS_H */
