/* C interface to the pim process-discovery library.
 *
 * All functions return a pim_status; non-zero means failure and
 * pim_last_error() describes what went wrong for the calling thread.
 * Objects are created behind opaque handles and released with the matching
 * _free function. Strings returned through char** out-parameters are owned
 * by the caller and released with pim_string_free.
 */
#ifndef PIM_H
#define PIM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct pim_log pim_log;
typedef struct pim_tree pim_tree;

typedef enum pim_status {
    PIM_OK = 0,
    PIM_ERR_PARAMETER = 1, /* bad option or argument */
    PIM_ERR_PARSE = 2,     /* malformed input data or file I/O failure */
    PIM_ERR_RESOURCE = 3,  /* a guard was exceeded; not computable at this scale */
    PIM_ERR_INTERNAL = 4
} pim_status;

/* Message for the most recent failure on this thread. Never NULL. */
const char* pim_last_error(void);

void pim_string_free(char* s);

/* ---- event logs ---- */

typedef struct pim_csv_options {
    const char* case_column;     /* NULL: "case" */
    const char* activity_column; /* NULL: "activity" */
    const char* time_column;     /* NULL: keep input order */
    char delimiter;              /* 0: ',' */
    int has_header;              /* nonzero: first row is a header */
} pim_csv_options;

typedef enum pim_log_format {
    PIM_FORMAT_CSV = 0,
    PIM_FORMAT_XES = 1,
    PIM_FORMAT_VARIANTS = 2
} pim_log_format;

pim_status pim_log_from_csv(const char* data, size_t length, const pim_csv_options* options,
                            pim_log** out);
pim_status pim_log_from_xes(const char* data, size_t length, pim_log** out);
pim_status pim_log_from_variants(const char* data, size_t length, pim_log** out);
pim_status pim_log_from_file(const char* path, pim_log_format format,
                             const pim_csv_options* csv_options, pim_log** out);
void pim_log_free(pim_log* log);

typedef struct pim_log_stats {
    uint64_t traces;
    uint64_t events;
    uint64_t alphabet_size;
    uint64_t distinct_variants;
    uint64_t empty_traces;
    uint64_t warnings; /* e.g. skipped XES events */
} pim_log_stats;

pim_status pim_log_get_stats(const pim_log* log, pim_log_stats* out);
pim_status pim_log_to_variants(const pim_log* log, char** out);

/* ---- discovery ---- */

typedef struct pim_discover_options {
    double filter_percent;   /* percentile of dfg+ifg edges kept; default 99.5 */
    int32_t max_activities;  /* <= 0: unbounded */
    int32_t exhaustive_limit;/* <= 0: default 12 */
    int32_t debug_top_k;     /* >0: record the k best cuts per step */
} pim_discover_options;

void pim_discover_options_init(pim_discover_options* options);

pim_status pim_discover(const pim_log* log, const pim_discover_options* options, pim_tree** out);

/* As pim_discover, and also returns the recursion trace as a JSON array. */
pim_status pim_discover_traced(const pim_log* log, const pim_discover_options* options,
                               pim_tree** out, char** trace_json);

/* ---- process trees ---- */

pim_status pim_tree_parse(const char* text, pim_tree** out);
pim_status pim_tree_to_text(const pim_tree* tree, char** out);
pim_status pim_tree_normalize(const pim_tree* tree, pim_tree** out);
pim_status pim_tree_to_json(const pim_tree* tree, char** out);
pim_status pim_tree_to_dot(const pim_tree* tree, char** out);
pim_status pim_tree_to_model_dot(const pim_tree* tree, char** out);  /* block graph */
pim_status pim_tree_to_model_json(const pim_tree* tree, char** out); /* block graph */
void pim_tree_free(pim_tree* tree);

/* ---- graphs ---- */

/* DOT of the directly-follows graph after percentile filtering. With
 * overlay_removed nonzero, edges dropped by the filter are drawn dashed. */
pim_status pim_graph_dot(const pim_log* log, double filter_percent, int overlay_removed,
                         char** out);

/* CSV table of all pairwise relation scores on the filtered graphs. */
pim_status pim_score_table_csv(const pim_log* log, double filter_percent, char** out);

/* ---- quality ---- */

typedef struct pim_quality {
    double fitness;
    double precision;
    double f_score;
    uint64_t size;
    uint64_t cfc;
} pim_quality;

/* loop_bound <= 0 defaults to 3; trace_limit == 0 defaults to 200000. */
pim_status pim_evaluate(const pim_tree* tree, const pim_log* log, int32_t loop_bound,
                        uint64_t trace_limit, pim_quality* out);
pim_status pim_quality_to_json(const pim_quality* quality, char** out);
pim_status pim_quality_to_table(const pim_quality* quality, char** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PIM_H */
