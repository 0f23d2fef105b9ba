/* acdc: AC power flow with VSC multi-terminal HVDC and in-iteration limit
 * enforcement.
 *
 * C interface to the solver library. Objects are opaque handles created and
 * destroyed through these functions; every fallible call returns an
 * acdc_status and leaves a human-readable message in acdc_last_error()
 * (thread local). Handles are not thread safe individually, but independent
 * solves on separate handles may run concurrently.
 */
#ifndef ACDC_H
#define ACDC_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum acdc_status {
    ACDC_OK = 0,
    ACDC_ERROR_IO = 1,         /* file not found / unreadable */
    ACDC_ERROR_PARSE = 2,      /* malformed case or overlay text */
    ACDC_ERROR_VALIDATION = 3, /* structurally unsolvable inputs */
    ACDC_ERROR_ARGUMENT = 4,   /* null handle, bad index, bad option */
    ACDC_ERROR_INTERNAL = 5
} acdc_status;

typedef enum acdc_solve_status {
    ACDC_SOLVE_CONVERGED = 0,
    ACDC_SOLVE_MAX_ITERATIONS = 1,
    ACDC_SOLVE_DIVERGED = 2
} acdc_solve_status;

typedef struct acdc_case acdc_case;         /* AC network case */
typedef struct acdc_mtdc acdc_mtdc;         /* converter overlay */
typedef struct acdc_solution acdc_solution; /* solve result */

typedef struct acdc_options {
    double tol;              /* residual infinity-norm target, default 1e-8 */
    int max_iter;            /* default 50 */
    int enforce_start_iter;  /* first limit-enforcement iteration, default 4 */
    int max_pv_per_iter;     /* generator conversions per iteration, default 1 */
    int qlim_enforcement;    /* generator reactive limits, default 1 (on) */
    double divergence_norm;  /* default 1e6 */
    double step_damping;     /* Newton step scale, default 1.0 */
    int dishonest_newton;    /* reserved, must stay 0 */
} acdc_options;

typedef struct acdc_bus_result {
    int id;
    double v;      /* voltage magnitude, pu */
    double theta;  /* angle, rad */
    double p_gen;
    double q_gen;
    double p_load; /* case load plus converter draw */
    double q_load;
    int q_binding; /* -1 at q_min, 0 free, 1 at q_max (any generator here) */
} acdc_bus_result;

typedef struct acdc_vsc_result {
    int id;
    int ac_bus;
    int dc_node;
    double p_sh;
    double q_sh;
    double p_dc;  /* net injection into the DC network */
    double v_m;
    double v_sh;
    double i_sh;
    double v_dc;
    int vsh_binding;         /* -1 at min, 0 free, 1 at max */
    int ish_binding;         /* 0 free, 1 at max */
    int p_control_released;  /* primary converters */
    int vdc_control_released;/* secondary converters */
} acdc_vsc_result;

typedef struct acdc_dc_node_result {
    int id;
    double v_dc;
} acdc_dc_node_result;

typedef struct acdc_binding_limit {
    const char* device; /* "generator" | "vsc"; owned by the solution */
    int id;             /* bus id for generators, converter id otherwise */
    const char* limit;  /* "q_max" | "q_min" | "vsh_max" | "vsh_min" | "ish_max" */
    double value;
} acdc_binding_limit;

typedef struct acdc_iteration_entry {
    int iteration;
    double residual_norm;
    uint64_t pattern_hash;
    int event_count;
} acdc_iteration_entry;

/* ---- library ---- */
const char* acdc_version(void);
/* Message from the most recent failing call on this thread. */
const char* acdc_last_error(void);
void acdc_string_free(char* s);

/* ---- case ---- */
acdc_status acdc_case_load(const char* path, acdc_case** out);
acdc_status acdc_case_parse(const char* text, acdc_case** out);
void acdc_case_free(acdc_case* c);
int acdc_case_bus_count(const acdc_case* c);
int acdc_case_gen_count(const acdc_case* c);
int acdc_case_branch_count(const acdc_case* c);
double acdc_case_base_mva(const acdc_case* c);

/* ---- overlay ---- */
acdc_status acdc_mtdc_load(const char* path, acdc_mtdc** out);
acdc_status acdc_mtdc_parse(const char* text, acdc_mtdc** out);
acdc_status acdc_mtdc_empty(acdc_mtdc** out);
void acdc_mtdc_free(acdc_mtdc* m);
int acdc_mtdc_converter_count(const acdc_mtdc* m);

/* ---- validation / solve ---- */
void acdc_options_init(acdc_options* opts);
/* Returns ACDC_OK when the pair is solvable. *report_json (optional) receives
 * a malloc'd {"errors":[...],"warnings":[...]} document either way. */
acdc_status acdc_validate(const acdc_case* c, const acdc_mtdc* m, char** report_json);
/* mtdc may be NULL for a plain AC solve; opts NULL for defaults. A solve that
 * runs but does not converge still returns ACDC_OK with a solution handle. */
acdc_status acdc_solve(const acdc_case* c, const acdc_mtdc* m, const acdc_options* opts,
                       acdc_solution** out);

/* ---- solution ---- */
void acdc_solution_free(acdc_solution* s);
acdc_solve_status acdc_solution_status(const acdc_solution* s);
int acdc_solution_iterations(const acdc_solution* s);
double acdc_solution_residual_norm(const acdc_solution* s);
double acdc_solution_wall_ms(const acdc_solution* s);
double acdc_solution_analyze_ms(const acdc_solution* s);
int acdc_solution_symbolic_analyses(const acdc_solution* s);
int acdc_solution_numeric_factorizations(const acdc_solution* s);
int acdc_solution_pattern_stable(const acdc_solution* s);
/* Failure diagnostics for diverged solves, empty string otherwise. */
const char* acdc_solution_failure(const acdc_solution* s);

int acdc_solution_bus_count(const acdc_solution* s);
acdc_status acdc_solution_bus(const acdc_solution* s, int index, acdc_bus_result* out);
int acdc_solution_vsc_count(const acdc_solution* s);
acdc_status acdc_solution_vsc(const acdc_solution* s, int index, acdc_vsc_result* out);
int acdc_solution_dc_node_count(const acdc_solution* s);
acdc_status acdc_solution_dc_node(const acdc_solution* s, int index, acdc_dc_node_result* out);
int acdc_solution_binding_count(const acdc_solution* s);
acdc_status acdc_solution_binding(const acdc_solution* s, int index, acdc_binding_limit* out);
int acdc_solution_iteration_count(const acdc_solution* s);
acdc_status acdc_solution_iteration(const acdc_solution* s, int index,
                                    acdc_iteration_entry* out);
/* Event text, owned by the solution. NULL for out-of-range indices. */
const char* acdc_solution_iteration_event(const acdc_solution* s, int iter_index,
                                          int event_index);
/* Full solution document as malloc'd JSON; free with acdc_string_free. */
char* acdc_solution_to_json(const acdc_solution* s);

#ifdef __cplusplus
}
#endif

#endif /* ACDC_H */
