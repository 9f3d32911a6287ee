#ifndef TOPODECK_H
#define TOPODECK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum TdStatus {
  TD_STATUS_OK = 0,
  TD_STATUS_NULL_POINTER = 1,
  TD_STATUS_INVALID_UTF8 = 2,
  /**
   * Input text is not a graph file.
   */
  TD_STATUS_PARSE = 3,
  /**
   * Input parsed but is not a well-formed graph.
   */
  TD_STATUS_INVALID = 4,
  /**
   * The operation needs a compact graph.
   */
  TD_STATUS_NON_COMPACT = 5,
  /**
   * Any other precondition failure, such as an unknown point.
   */
  TD_STATUS_DOMAIN = 6,
  TD_STATUS_OUT_OF_RANGE = 7,
  /**
   * A bug inside the library; the handle arguments are left untouched.
   */
  TD_STATUS_PANIC = 8,
} TdStatus;

/**
 * Opaque deck handle: sorted card certificates.
 */
typedef struct TdDeck TdDeck;

/**
 * Opaque graph handle.
 */
typedef struct TdGraph TdGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a graph in the text or JSON format and validates it.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum TdStatus td_graph_parse(const char *text, struct TdGraph **out);

/**
 * Releases a graph. Null is ignored.
 *
 * # Safety
 * `g` must come from this library and not have been freed.
 */
void td_graph_free(struct TdGraph *g);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void td_string_free(char *s);

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call into the library on this thread.
 */
const char *td_last_error_message(void);

/**
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
enum TdStatus td_graph_to_text(const struct TdGraph *g, char **out);

/**
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
enum TdStatus td_graph_to_json(const struct TdGraph *g, char **out);

/**
 * Homeomorphism certificate.
 *
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
enum TdStatus td_graph_certificate(const struct TdGraph *g, char **out);

/**
 * # Safety
 * `a` and `b` must be live graph handles; `out` must be writable.
 */
enum TdStatus td_graph_is_homeomorphic(const struct TdGraph *a, const struct TdGraph *b, bool *out);

/**
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
enum TdStatus td_graph_is_compact(const struct TdGraph *g, bool *out);

/**
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
enum TdStatus td_graph_end_count(const struct TdGraph *g, size_t *out);

/**
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
enum TdStatus td_graph_max_nstar(const struct TdGraph *g, size_t *out);

/**
 * `E` at a point given as `v:<id>`, `e:<id>` or `c:<k>`.
 *
 * # Safety
 * `g` must be a live graph handle, `point` a NUL-terminated string, `out` writable.
 */
enum TdStatus td_graph_estar(const struct TdGraph *g, const char *point, uint32_t *out);

/**
 * The graph with one point removed.
 *
 * # Safety
 * `g` must be a live graph handle, `point` a NUL-terminated string, `out` writable.
 */
enum TdStatus td_graph_remove_point(const struct TdGraph *g,
                                    const char *point,
                                    struct TdGraph **out);

/**
 * The quotient identifying two points.
 *
 * # Safety
 * `g` must be a live graph handle, `p` and `q` NUL-terminated strings, `out` writable.
 */
enum TdStatus td_graph_collapse(const struct TdGraph *g,
                                const char *p,
                                const char *q,
                                struct TdGraph **out);

/**
 * One point per end.
 *
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
enum TdStatus td_graph_freudenthal(const struct TdGraph *g, struct TdGraph **out);

/**
 * One point for all ends.
 *
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
enum TdStatus td_graph_alexandroff(const struct TdGraph *g, struct TdGraph **out);

/**
 * Deck of a compact graph with at least three points.
 *
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
enum TdStatus td_deck_compute(const struct TdGraph *g, struct TdDeck **out);

/**
 * Number of cards; 0 for null.
 *
 * # Safety
 * `d` must be null or a live deck handle.
 */
size_t td_deck_len(const struct TdDeck *d);

/**
 * Certificate of card `index`, borrowed from the deck.
 *
 * # Safety
 * `d` must be a live deck handle; `out` must be writable. The string is
 * valid until the deck is freed.
 */
enum TdStatus td_deck_card(const struct TdDeck *d, size_t index, const char **out);

/**
 * Releases a deck. Null is ignored.
 *
 * # Safety
 * `d` must come from this library and not have been freed.
 */
void td_deck_free(struct TdDeck *d);

/**
 * Library version, static storage.
 */
const char *td_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TOPODECK_H */
