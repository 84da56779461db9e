/* C interface to the bachmx core: exact Hirzebruch lattice arithmetic,
 * closed-form extremal Calabi energies, curvature stacks through the Bach
 * tensor, field-equation residual suites, and quadrature energies.
 *
 * Conventions: every function returns a bmx_status; results come back
 * through out-parameters. Handles are opaque and freed with the matching
 * _destroy/_free call. Rationals travel as strings ("n", "n/d", or exact
 * decimals) to keep the lattice arithmetic exact across the boundary.
 * Strings returned through char** are heap-allocated; release them with
 * bmx_string_free. All functions are thread-safe on distinct handles.
 */

#ifndef BMX_BMX_H
#define BMX_BMX_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bmx_status {
  BMX_OK = 0,
  BMX_ERR_INVALID_ARGUMENT = 1,
  BMX_ERR_PARSE = 2,
  BMX_ERR_BASIS_MISMATCH = 3,
  BMX_ERR_PARITY = 4,
  BMX_ERR_NOT_KAHLER = 5,
  BMX_ERR_DEGENERATE_CLASS = 6,
  BMX_ERR_DOMAIN = 7,
  BMX_ERR_OUT_OF_DOMAIN = 8,
  BMX_ERR_NON_FINITE = 9,
  BMX_ERR_NOT_POSITIVE_DEFINITE = 10,
  BMX_ERR_INCOMPATIBLE_STRUCTURE = 11,
  BMX_ERR_NOT_FOUND = 12,
  BMX_ERR_OVERFLOW = 13,
  BMX_ERR_UNSUPPORTED = 14,
  BMX_ERR_INTERNAL = 99
} bmx_status;

const char* bmx_version(void);
const char* bmx_status_name(bmx_status status);

/* Message for the most recent failure on this thread. */
const char* bmx_last_error(void);

void bmx_string_free(char* s);

/* ---- cohomology classes on Hirzebruch surfaces -------------------- */

typedef struct bmx_class_t bmx_class_t;

bmx_status bmx_class_create(unsigned k, const char* p, const char* q,
                            bmx_class_t** out);
void bmx_class_destroy(bmx_class_t* cls);

/* {"k": int, "p": "num/den", "q": "num/den"} */
bmx_status bmx_class_to_json(const bmx_class_t* cls, char** out);
bmx_status bmx_class_from_json(const char* json, bmx_class_t** out);

/* exact rational intersection number, as a string */
bmx_status bmx_class_intersect(const bmx_class_t* a, const bmx_class_t* b,
                               char** out);

bmx_status bmx_class_change_basis(const bmx_class_t* cls, unsigned n,
                                  bmx_class_t** out);

bmx_status bmx_class_is_kahler(const bmx_class_t* cls, int* out);

/* writes up to cap indices; count receives the total */
bmx_status bmx_class_compatible_structures(const bmx_class_t* cls,
                                           unsigned* buf, size_t cap,
                                           size_t* count);

bmx_status bmx_first_chern(unsigned k, bmx_class_t** out);

/* 32 pi^2 (c1.A)^2 / (A.A); requires positive self-intersection */
bmx_status bmx_class_lebrun_bound(const bmx_class_t* cls, double* out);

/* ---- closed-form extremal Calabi energies ------------------------- */

/* energy / pi as an exact rational string, and as a double */
bmx_status bmx_calabi_energy_hs(const char* a, unsigned k, char** over_pi,
                                double* value);
bmx_status bmx_calabi_energy_class(const bmx_class_t* cls, char** over_pi,
                                   double* value);

/* cross-structure table; format "json" or "csv"; distinct receives 1 when
 * at least two rows realize different energies (-1 when not applicable) */
bmx_status bmx_compare_report(const bmx_class_t* cls, const char* format,
                              char** out, int* distinct);

/* Kahler-cone verdict plus the compatible-structure table */
bmx_status bmx_cone_report(unsigned k, const char* p, const char* q,
                           const char* format, char** out);

/* ---- catalog geometries ------------------------------------------- */

typedef struct bmx_entry_t bmx_entry_t;

bmx_status bmx_entry_open(const char* name, bmx_entry_t** out);
void bmx_entry_destroy(bmx_entry_t* entry);
bmx_status bmx_entry_info(const bmx_entry_t* entry, char** out_json);
bmx_status bmx_catalog_list(const char* format, char** out);

/* curvature stack at a chart point, as JSON (row-major covariant arrays) */
bmx_status bmx_curvature_stack_json(const bmx_entry_t* entry, int chart,
                                    const double x[4], char** out);

/* ---- quadrature energies ------------------------------------------ */

/* functional: "volume", "calabi", "weyl", "weyl-plus", "weyl-minus";
 * emits {"value":..,"error_estimate":..,"nodes":..,"convention":..} */
bmx_status bmx_energy_numeric(const bmx_entry_t* entry, const char* functional,
                              int resolution, char** out_json);

/* closed-form energy of a class ("calabi" or "weyl-plus") */
bmx_status bmx_energy_formula(const bmx_class_t* cls, const char* functional,
                              char** out_json);

/* ---- verification suites ------------------------------------------ */

/* suite: "curvature", "em", "bm", "conformal"; violations receives the
 * number of failed checks (0 when everything passed) */
bmx_status bmx_verify_run(const bmx_entry_t* entry, const char* suite,
                          int resolution, double tolerance,
                          unsigned long long seed, const char* format,
                          char** out, int* violations);

#ifdef __cplusplus
}
#endif

#endif /* BMX_BMX_H */
