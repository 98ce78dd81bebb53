#ifndef SYMPFORM_H
#define SYMPFORM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Success / boolean false.
 */
#define SYMPFORM_OK 0

/**
 * Boolean true.
 */
#define SYMPFORM_TRUE 1

/**
 * Null handle or invalid argument.
 */
#define SYMPFORM_ERR_ARGUMENT -1

/**
 * Parse or verification error; details via sympform_last_error.
 */
#define SYMPFORM_ERR_PARSE -2

/**
 * Opaque differential-form handle.
 */
typedef struct SympformForm SympformForm;

/**
 * Opaque manifold handle.
 */
typedef struct SympformManifold SympformManifold;

/**
 * Returns the last error message recorded on this thread. The pointer is
 * valid until the next failing call on the same thread. Never null.
 */
const char *sympform_last_error(void);

/**
 * Parses a manifold descriptor JSON string. Returns null on error.
 */
struct SympformManifold *sympform_manifold_from_json(const char *json);

/**
 * Frees a manifold handle. Null is a no-op.
 */
void sympform_manifold_free(struct SympformManifold *m);

/**
 * Parses a form expression over the manifold's coordinates. Returns null on
 * error.
 */
struct SympformForm *sympform_form_parse(const struct SympformManifold *m, const char *expr);

/**
 * Frees a form handle. Null is a no-op.
 */
void sympform_form_free(struct SympformForm *f);

/**
 * Degree of a form, or a negative error code.
 */
int sympform_form_degree(const struct SympformForm *f);

/**
 * Checks a named boundary condition (e.g. "D", "Nplus", "DplusPlus") on all
 * boundary components. Returns 1 (holds), 0 (violated), or a negative error
 * code.
 */
int sympform_check_bc(const struct SympformManifold *m,
                      const struct SympformForm *f,
                      const char *bc);

/**
 * Returns 1 when the form is primitive (vanishing omega-trace), 0 otherwise,
 * or a negative error code.
 */
int sympform_form_is_primitive(const struct SympformManifold *m, const struct SympformForm *f);

/**
 * Computes every cohomology dimension table and the complex indices as a
 * JSON string. Free with sympform_string_free. Returns null on error.
 */
char *sympform_cohomology_json(const struct SympformManifold *m);

/**
 * Frees a string returned by this library. Null is a no-op.
 */
void sympform_string_free(char *s);

#endif  /* SYMPFORM_H */
