/* surfq public C API: quantum operators on embedded surfaces.
 *
 * All objects are opaque handles created/destroyed through this interface.
 * Functions return surfq_status; on error, surfq_last_error_message() gives
 * a thread-local description of the most recent failure.
 */
#ifndef SURFQ_H
#define SURFQ_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum surfq_status {
    SURFQ_OK = 0,
    SURFQ_ERR_INVALID_PARAMS = 1,
    SURFQ_ERR_DEGENERATE_CHART = 2,
    SURFQ_ERR_GRID_TOO_COARSE = 3,
    SURFQ_ERR_GRID_MISMATCH = 4,
    SURFQ_ERR_MISSING_REFERENCE = 5,
    SURFQ_ERR_FACTOR_NONPOSITIVE = 6,
    SURFQ_ERR_SINGULAR_ODE = 7,
    SURFQ_ERR_CONFIG = 8,
    SURFQ_ERR_NULL_ARGUMENT = 9,
    SURFQ_ERR_IO = 10,
    SURFQ_ERR_UNKNOWN = 11
} surfq_status;

typedef struct surfq_surface surfq_surface;
typedef struct surfq_grid surfq_grid;
typedef struct surfq_field surfq_field;
typedef struct surfq_factors surfq_factors;
typedef struct surfq_config surfq_config;
typedef struct surfq_report surfq_report;

/* Pointwise geometric data at a chart point. */
typedef struct surfq_frame {
    double position[3];
    double r_cov[2][3];      /* r_mu */
    double r_contra[2][3];   /* r^mu */
    double metric[2][2];     /* g_{mu nu} */
    double metric_inv[2][2]; /* g^{mu nu} */
    double det_g;
    double normal[3];
    double second_form[2][2];
    double christoffel[2][2][2]; /* [gamma][mu][nu] */
    double gamma_contracted[2];
    double mean_curv;
    double gauss_curv;
} surfq_frame;

typedef enum surfq_operator {
    SURFQ_OP_LAPLACE_BELTRAMI = 0,
    SURFQ_OP_P_X = 1,
    SURFQ_OP_P_Y = 2,
    SURFQ_OP_P_Z = 3,
    SURFQ_OP_P_MU_0 = 4, /* generalized momentum along the first coordinate */
    SURFQ_OP_P_MU_1 = 5,
    SURFQ_OP_KINETIC_CURVED = 6,
    SURFQ_OP_NAIVE_P_SQUARED = 7,
    SURFQ_OP_P_X_BARE = 8 /* non-Hermitized derivative term, negative control */
} surfq_operator;

typedef enum surfq_ordering {
    SURFQ_ORDERING_T = 0,  /* (1/f) p f^2 p (1/f) */
    SURFQ_ORDERING_T1 = 1, /* (1/f) p f p */
    SURFQ_ORDERING_T2 = 2  /* p f p (1/f) */
} surfq_ordering;

const char* surfq_version(void);
const char* surfq_status_name(surfq_status status);
/* Thread-local message for the most recent error in this thread. */
const char* surfq_last_error_message(void);

/* ---- surfaces ---------------------------------------------------------- */

/* Built-in names: plane, monge, sphere, spheroid, torus, cylinder, catenoid.
 * Parameters are (key, value) pairs, e.g. ("a", 2.0), ("b", 1.0). */
surfq_status surfq_surface_create(const char* name, const char* const* param_keys,
                                  const double* param_values, size_t n_params,
                                  surfq_surface** out);
void surfq_surface_destroy(surfq_surface* s);

surfq_status surfq_surface_frame(const surfq_surface* s, double xi, double zeta,
                                 surfq_frame* out);
/* Coordinate domain: lo[2], hi[2], periodic[2] (0/1). */
surfq_status surfq_surface_domain(const surfq_surface* s, double* lo, double* hi, int* periodic);

/* ---- grids and fields --------------------------------------------------- */

surfq_status surfq_grid_create(const surfq_surface* s, int n_xi, int n_zeta, double margin,
                               int fd_order, surfq_grid** out);
void surfq_grid_destroy(surfq_grid* g);
surfq_status surfq_grid_size(const surfq_grid* g, int* n_xi, int* n_zeta);

surfq_status surfq_field_constant(const surfq_grid* g, double re, double im, surfq_field** out);
surfq_status surfq_field_random(const surfq_grid* g, uint64_t seed, int bandlimit,
                                surfq_field** out);
void surfq_field_destroy(surfq_field* f);
/* Copies node values (row-major, xi outer) into re/im arrays of length
 * n_xi * n_zeta. */
surfq_status surfq_field_values(const surfq_field* f, double* re, double* im, size_t n);
surfq_status surfq_field_set_values(surfq_field* f, const double* re, const double* im,
                                    size_t n);
surfq_status surfq_field_export_csv(const surfq_field* f, const char* path);

/* <phi|psi> under the sqrt(g)-weighted quadrature. */
surfq_status surfq_inner_product(const surfq_field* phi, const surfq_field* psi, double* re,
                                 double* im);

surfq_status surfq_apply(const surfq_grid* g, surfq_operator op, double hbar, double mass,
                         const surfq_field* in, surfq_field** out);

/* ---- ordering factors --------------------------------------------------- */

surfq_status surfq_factors_constant(const surfq_grid* g, surfq_factors** out);
surfq_status surfq_factors_closed_form(const surfq_grid* g, surfq_factors** out);
surfq_status surfq_factors_solve(const surfq_grid* g, surfq_factors** out);
void surfq_factors_destroy(surfq_factors* f);
surfq_status surfq_factors_values(const surfq_factors* f, int axis, double* values, size_t n);

surfq_status surfq_apply_ordered(const surfq_grid* g, surfq_ordering ordering, double hbar,
                                 double mass, const surfq_factors* f, const surfq_field* in,
                                 surfq_field** out);

/* ---- configuration and verification suites ------------------------------ */

surfq_status surfq_config_create(surfq_config** out);
void surfq_config_destroy(surfq_config* c);
/* Flat key=value configuration; the same keys as the config-file format
 * (surface, a, b, n, n_xi, n_zeta, margin, fd_order, seed, hbar, mass,
 * tol.<check>, json, csv_dir, inject_corrupt_normal). */
surfq_status surfq_config_set(surfq_config* c, const char* key, const char* value);
surfq_status surfq_config_load_file(surfq_config* c, const char* path);

/* Commands: geom, check, ordering, factors, hermiticity. */
surfq_status surfq_run(const surfq_config* c, const char* command, surfq_report** out);
void surfq_report_destroy(surfq_report* r);

surfq_status surfq_report_passed(const surfq_report* r, int* passed);
surfq_status surfq_report_check_count(const surfq_report* r, size_t* count);
surfq_status surfq_report_check(const surfq_report* r, size_t index, const char** name,
                                double* max_residual, double* tolerance, int* pass);
/* Serialized forms; returned strings are owned by the report. */
surfq_status surfq_report_json(const surfq_report* r, const char** json);
surfq_status surfq_report_table(const surfq_report* r, const char** text);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SURFQ_H */
