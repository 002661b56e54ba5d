#ifndef GRUNSKY_H
#define GRUNSKY_H

/* C interface to the Grunsky operator library. All functions returning int
 * yield a status code: 0 on success, otherwise one of the GRUNSKY_ERR values
 * below; grunsky_last_error() then carries a message for the calling thread.
 * Objects come back through opaque handles released by the matching _free. */

#ifdef __cplusplus
extern "C" {
#endif

enum {
    GRUNSKY_OK = 0,
    /* validation failures (suggested process exit code 1) */
    GRUNSKY_ERR_CONFIG_PARSE = 1,
    GRUNSKY_ERR_INVALID_ARGUMENT = 2,
    GRUNSKY_ERR_ZERO_CONSTANT_TERM = 3,
    GRUNSKY_ERR_COMPOSITION_DOMAIN = 4,
    GRUNSKY_ERR_NONZERO_CONSTANT = 5,
    GRUNSKY_ERR_OUTSIDE_DISK = 6,
    GRUNSKY_ERR_OVERLAPPING_IMAGES = 7,
    GRUNSKY_ERR_POLE_IN_IMAGE = 8,
    GRUNSKY_ERR_DEGENERATE_DERIVATIVE = 9,
    GRUNSKY_ERR_DEGENERATE_CENTERS = 10,
    GRUNSKY_ERR_WRONG_SPACE = 11,
    GRUNSKY_ERR_SPACE_MISMATCH = 12,
    GRUNSKY_ERR_RESOLUTION_TOO_LOW = 13,
    GRUNSKY_ERR_RIGGING_NOT_CERTIFIED = 14,
    GRUNSKY_ERR_IO = 15,
    /* numerical failures (suggested process exit code 2) */
    GRUNSKY_ERR_SERIES_ILL_CONDITIONED = 16,
    GRUNSKY_ERR_QUADRATURE_DIVERGED = 17,
    GRUNSKY_ERR_POWER_ITERATION_STALLED = 18,
    GRUNSKY_ERR_INCONSISTENT_PRODUCTS = 19,
    /* handle or pointer argument was null or otherwise unusable */
    GRUNSKY_ERR_BAD_HANDLE = 100,
    /* unexpected condition inside the library */
    GRUNSKY_ERR_INTERNAL = 101
};

typedef struct grunsky_rigging grunsky_rigging;
typedef struct grunsky_op grunsky_op;

/* stable name of a status code */
const char* grunsky_status_name(int status);
/* 0, 1 or 2 per the class split above */
int grunsky_exit_code(int status);
/* message of the last failing call on this thread; empty string if none */
const char* grunsky_last_error(void);
/* releases strings returned through char** parameters */
void grunsky_free_string(char* s);

/* Parses the "maps" / "samples" portion of a config document (JSON text) and
 * certifies the disjointness of the images. */
int grunsky_rigging_parse(const char* config_json, grunsky_rigging** rigging_out);
void grunsky_rigging_free(grunsky_rigging* rigging);
int grunsky_rigging_count(const grunsky_rigging* rigging);
double grunsky_rigging_margin(const grunsky_rigging* rigging);

/* Assembles the block operator at truncation `order` with route "series" or
 * "quadrature" (null defaults to series). */
int grunsky_compute(const grunsky_rigging* rigging, int order, const char* route,
                    grunsky_op** op_out);
void grunsky_op_free(grunsky_op* op);
/* side length of the flattened matrix (n times order) */
int grunsky_op_dim(const grunsky_op* op);
int grunsky_op_norm(const grunsky_op* op, double* norm_out);
/* entry of the flattened matrix; row-major indices in [0, dim) */
int grunsky_op_entry(const grunsky_op* op, int row, int col, double* re_out, double* im_out);
int grunsky_op_json(const grunsky_op* op, char** json_out);
int grunsky_op_csv(const grunsky_op* op, char** csv_out);

/* One-shot driver behind the command line tool. `command` is one of compute,
 * norm, invariance, recover, holomorphy, sweep, zoo-list. `config_json` is
 * the config document text (may be null for zoo-list). `out_dir` overrides
 * the output directory when non-null, `order_override` > 0 overrides the
 * truncation, non-null `route_override` overrides the route. Writes the
 * command's output files and hands back the human-readable report. */
int grunsky_run(const char* command, const char* config_json, const char* out_dir,
                int order_override, const char* route_override, char** report_out);

#ifdef __cplusplus
}
#endif

#endif /* GRUNSKY_H */
