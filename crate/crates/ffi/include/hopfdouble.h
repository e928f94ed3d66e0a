/* C interface to the hopfdouble exact-arithmetic Hopf algebra toolkit.
 *
 * Maintained by hand alongside crates/ffi/src/lib.rs; the layout-level
 * contract is covered by the crate's test suite.
 *
 * Handle model: constructors write an opaque handle through an
 * out-parameter and return hd_status; the handle is only written on HD_OK
 * and must be released with the matching hd_*_free (null is accepted).
 * Report functions return pretty-printed JSON strings allocated by the
 * library; release them with hd_string_free. A report function that ran to
 * completion but found a failing check writes the report and returns
 * HD_CHECK_FAILED.
 *
 * hd_last_error() returns the message of the most recent failure on the
 * calling thread; the pointer stays valid until the next failing call on
 * that thread.
 */

#ifndef HOPFDOUBLE_H
#define HOPFDOUBLE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hd_status {
  HD_OK = 0,
  HD_INVALID_ARGUMENT = 1,
  HD_PARSE_ERROR = 2,
  HD_CHECK_FAILED = 3,
  HD_LIMIT_EXCEEDED = 4,
  HD_INTERNAL_ERROR = 5,
} hd_status;

typedef struct HdGroup HdGroup;
typedef struct HdHopf HdHopf;
typedef struct HdDouble HdDouble;

/* Packed ABI version: major in the upper 16 bits, minor in the lower. */
uint32_t hd_abi_version(void);

/* Most recent failure message on this thread; never null. */
const char *hd_last_error(void);

void hd_string_free(char *ptr);
void hd_group_free(HdGroup *ptr);
void hd_hopf_free(HdHopf *ptr);
void hd_double_free(HdDouble *ptr);

/* Groups ------------------------------------------------------------- */

/* Close permutation generators in cycle notation, e.g. "(12),(123)". */
hd_status hd_group_from_generators(const char *generators, uint32_t max_order,
                                   HdGroup **out);

/* Load a Cayley table from JSON in the group-table/1 format. */
hd_status hd_group_from_table_json(const char *json, uint32_t max_order,
                                   HdGroup **out);

uint32_t hd_group_order(const HdGroup *group);
uint32_t hd_group_class_count(const HdGroup *group);

/* Order, labels and conjugacy classes. */
hd_status hd_group_info_json(const HdGroup *group, char **out_json);

/* Conjugacy-class calculi with all exactness checks. */
hd_status hd_group_calculi_json(const HdGroup *group, char **out_json);

/* Hochschild cohomology report for one conjugacy class. */
hd_status hd_group_cohomology_json(const HdGroup *group, uint32_t class_index,
                                   char **out_json);

/* The algebra of functions on the group as a verified Hopf algebra. */
hd_status hd_group_function_hopf(const HdGroup *group, HdHopf **out);

/* Hopf algebras ------------------------------------------------------- */

/* Load and verify structure-constant JSON in the hopf-algebra/1 format. */
hd_status hd_hopf_from_json(const char *json, uint32_t max_dim, HdHopf **out);

uint32_t hd_hopf_dim(const HdHopf *hopf);

hd_status hd_hopf_to_json(const HdHopf *hopf, char **out_json);

/* Run the axiom checker and write the per-axiom report. */
hd_status hd_verify_hopf_json(const char *json, uint32_t max_dim,
                              char **out_report);

/* Quantum doubles ------------------------------------------------------ */

hd_status hd_double_build(const HdHopf *hopf, HdDouble **out);

uint32_t hd_double_dim(const HdDouble *dbl);

/* Axiom and quasi-triangularity report for the double. */
hd_status hd_double_verify_json(const HdDouble *dbl, char **out_report);

/* Numeric module ------------------------------------------------------- */

/* Residual report for the deformed-Euclidean five-dimensional
 * representation; passing n_z = 0 selects the built-in samples. */
hd_status hd_eq2_json(const double *z_values, size_t n_z, double tol,
                      char **out_report);

#ifdef __cplusplus
}
#endif

#endif /* HOPFDOUBLE_H */
