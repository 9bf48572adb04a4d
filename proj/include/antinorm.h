/* C interface to the antinorm library: opaque handles, status codes, and
 * JSON-text exchange for structured values. All returned strings are owned by
 * the caller and released with an_string_free. Error details for the last
 * failing call on the current thread are available via an_last_error. */

#ifndef ANTINORM_H
#define ANTINORM_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum an_status {
  AN_OK = 0,
  AN_ERR_PARSE = 1,
  AN_ERR_DOMAIN = 2,
  AN_ERR_PRECONDITION = 3,
  AN_ERR_INVALID_ARGUMENT = 4,
  AN_ERR_UNSUPPORTED = 5,
  AN_ERR_NOT_FOUND = 6,
  AN_ERR_WITNESS_NOT_FOUND = 7,
  AN_ERR_INTERNAL = 8,
} an_status;

typedef struct an_matrix an_matrix;
typedef struct an_scale an_scale;

const char* an_version(void);

/* Message for the most recent failure on this thread; empty string if none. */
const char* an_last_error(void);

void an_string_free(char* s);

/* Matrix text: JSON {"n":..,"re":[[..]],"im":[[..]]} or CSV rows of a real
 * symmetric matrix. */
an_status an_matrix_parse(const char* text, an_matrix** out);
an_status an_matrix_to_json(const an_matrix* m, char** out);
void an_matrix_free(an_matrix* m);

/* Scale text: JSON {"steps":[[width,value],...]}. */
an_status an_scale_parse(const char* text, an_scale** out);
/* Named analytic scale, e.g. "exp_inv_sqrt". */
an_status an_scale_named(const char* id, an_scale** out);
/* Spectral scale of a Hermitian matrix. */
an_status an_scale_of_matrix(const an_matrix* m, an_scale** out);
an_status an_scale_to_json(const an_scale* s, char** out);
void an_scale_free(an_scale* s);

/* Norm / anti-norm evaluation; specs are JSON tags, e.g.
 * {"kind":"kyfan","t":0.75} or {"kind":"derived","gauge":{...},"p":2}. */
an_status an_eval_norm(const char* gauge_json, const an_matrix* m, double* out);
an_status an_eval_norm_scale(const char* gauge_json, const an_scale* s, double* out);
an_status an_eval_antinorm(const char* spec_json, const an_matrix* m, double* out);
an_status an_eval_antinorm_scale(const char* spec_json, const an_scale* s, double* out);

/* relation: one of "sub_w", "maj", "super_w", "super_wlog". Result JSON:
 * {"relation":..,"holds":..,"worst_t":..,"margin":..}. Step scales only. */
an_status an_relation_check(const an_scale* a, const an_scale* b,
                            const char* relation, char** report_json);

/* Request JSON: {"op":"agm"|"dominance"|"triangle"|"orbit"|"mixed",
 *   "mode":"convex_super"|"concave_sub", "f":"expr", "g":"expr", "eps":0.0}.
 * Result JSON: {"margin":..,"method":..,"epsilon_used":..,"unitaries":[...]}. */
an_status an_witness(const char* request_json, const an_matrix* a,
                     const an_matrix* b, char** result_json);

/* Config JSON: {"trials":..,"dims":[..],"tolerance":..,"seed":..,
 *   "cases":[..],"jobs":..,"scale_b":".."}; omitted fields take defaults.
 * reports_jsonl: one report per line; summary_csv: per-case summary.
 * all_pass is set to 1 iff every report passed. */
an_status an_run_suite(const char* config_json, char** reports_jsonl,
                       char** summary_csv, int* all_pass);

/* Newline-separated list of suite case names. */
an_status an_suite_cases(char** out);

#ifdef __cplusplus
}
#endif

#endif /* ANTINORM_H */
