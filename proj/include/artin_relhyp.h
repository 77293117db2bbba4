/* C interface to the Artin group library.
 *
 * Every call returns an arh_status. On failure arh_last_error() describes the
 * problem (per thread). Strings returned through `char** out` are allocated by
 * the library and released with arh_string_free. Commands that check a
 * property return ARH_ASSERTION when the check fails; their report is still
 * written to `out`.
 */
#ifndef ARTIN_RELHYP_H
#define ARTIN_RELHYP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ARH_API __declspec(dllexport)
#else
#define ARH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  ARH_OK = 0,
  ARH_PARSE = 1,     /* malformed group file or word */
  ARH_ARGUMENT = 2,  /* invalid argument */
  ARH_SCOPE = 3,     /* group outside the supported class */
  ARH_RESOURCE = 4,  /* vertex cap exceeded */
  ARH_INTERNAL = 5,
  ARH_ASSERTION = 6  /* a checked property failed; the report is still produced */
} arh_status;

typedef enum { ARH_TEXT = 0, ARH_MACHINE = 1 } arh_format;
typedef enum { ARH_VERTEX = 0, ARH_CLAIM = 1 } arh_scan_mode;

typedef struct arh_group arh_group;
typedef struct arh_ball arh_ball;

typedef struct {
  int radius;
  int slack;
  uint64_t seed;
  size_t geodesic_cap;
  size_t quadrilateral_cap;
  arh_scan_mode mode;
  unsigned threads; /* 0: hardware concurrency */
  int strong;       /* reduce: level 4 instead of 3 */
  int allow_small_labels;
  int allow_extra_large;
  int per_pair; /* bigons: one record per scanned item */
  int timing;   /* accept: include runtimes */
  size_t samples;
  int search_radius;
  arh_format format;
} arh_options;

ARH_API void arh_options_default(arh_options* options);
ARH_API const char* arh_version(void);
ARH_API const char* arh_last_error(void);
ARH_API void arh_string_free(char* s);

ARH_API arh_status arh_group_load(const char* path, arh_group** out);
ARH_API arh_status arh_group_parse(const char* text, arh_group** out);
ARH_API arh_status arh_group_uniform(int n, int m, arh_group** out); /* m = 0: infinite */
ARH_API void arh_group_free(arh_group* group);
ARH_API int arh_group_rank(const arh_group* group);
/* m_ij, or 0 for infinity; -1 for invalid indices */
ARH_API int arh_group_label(const arh_group* group, int i, int j);

ARH_API arh_status arh_info(const arh_group* g, const arh_options* o, char** out);
ARH_API arh_status arh_relator(const arh_group* g, int i, int j, const arh_options* o, char** out);
ARH_API arh_status arh_nf(const arh_group* g, int i, int j, const char* word, const arh_options* o,
                          char** out);
ARH_API arh_status arh_minsyll(const arh_group* g, int i, int j, const char* word, const arh_options* o,
                               char** out);
/* `other` may be NULL; otherwise decides word = other. */
ARH_API arh_status arh_wp(const arh_group* g, const char* word, const char* other, const arh_options* o,
                          char** out);
ARH_API arh_status arh_reduce(const arh_group* g, const char* word, const arh_options* o, char** out);
ARH_API arh_status arh_intersect(const arh_group* g, int i, int j, int s, int t, const arh_options* o,
                                 char** out);

ARH_API arh_status arh_ball_build(const arh_group* g, const arh_options* o, arh_ball** out);
ARH_API void arh_ball_free(arh_ball* ball);
ARH_API arh_status arh_ball_summary(const arh_ball* b, const arh_options* o, char** out);
ARH_API arh_status arh_ball_export(const arh_ball* b, const arh_options* o, char** out);
ARH_API arh_status arh_ball_find(const arh_ball* b, const char* word, uint32_t* vertex);
/* doubled distance in the coned-off graph between two group vertices */
ARH_API arh_status arh_ball_distance(const arh_ball* b, uint32_t u, uint32_t v, int* distance);

ARH_API arh_status arh_dist(const arh_group* g, const char* from, const char* to, const arh_options* o,
                            char** out);
ARH_API arh_status arh_geo(const arh_group* g, const char* from, const char* to, const arh_options* o,
                           char** out);
/* from/to NULL: o->samples geodesics between random stable pairs */
ARH_API arh_status arh_pipeline(const arh_group* g, const char* from, const char* to, const arh_options* o,
                                char** out);
ARH_API arh_status arh_bigons(const arh_group* g, const arh_options* o, char** out);
ARH_API arh_status arh_delta(const arh_group* const* groups, const char* const* names, size_t count,
                             const arh_options* o, char** out);

/* Called with each criterion's rendered record as it finishes. */
typedef void (*arh_progress)(const char* record, void* user);
/* only/only_count select criteria (1..8); only_count = 0 runs all. */
ARH_API arh_status arh_accept(const arh_group* g, const int* only, size_t only_count, const arh_options* o,
                              arh_progress progress, void* user, char** out);

#ifdef __cplusplus
}
#endif

#endif
