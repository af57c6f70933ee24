/* normesh — polynomial norming meshes on sections of disk, sphere, ball and
 * torus, with certification, approximate Fekete points and discrete least
 * squares.
 *
 * C interface of the shared library. All functions return nm_status; on
 * failure nm_last_error() describes the problem for the calling thread.
 * Objects are opaque handles released with their matching _destroy call;
 * strings returned through char** are released with nm_string_free.
 */
#ifndef NORMESH_H
#define NORMESH_H

#include <stddef.h>

#if defined(_WIN32)
#define NM_API __declspec(dllexport)
#else
#define NM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nm_status {
    NM_OK = 0,
    NM_ERR_INVALID_ARGUMENT = 1,
    NM_ERR_INVALID_INTERVAL = 2,
    NM_ERR_INVALID_ANGLE = 3,
    NM_ERR_INVALID_FACTOR = 4,
    NM_ERR_PARAMETER_VALIDATION = 5,
    NM_ERR_DOMAIN = 6,
    NM_ERR_UNSUPPORTED_KIND = 7,
    NM_ERR_SCALING = 8,
    NM_ERR_DETERMINING_SET = 9,
    NM_ERR_EXTRACTION_FAILURE = 10,
    NM_ERR_NUMERICAL = 11,
    NM_ERR_JSON = 12,
    NM_ERR_IO = 13,
    NM_ERR_INTERNAL = 14
} nm_status;

typedef enum nm_family { NM_FAMILY_LOBATTO = 0, NM_FAMILY_CHEBZEROS = 1 } nm_family;

typedef enum nm_test_function { NM_FN_ONE = 0, NM_FN_COORD1 = 1, NM_FN_RUNGE = 2 } nm_test_function;

typedef struct nm_section nm_section;
typedef struct nm_mesh nm_mesh;
typedef struct nm_report nm_report;

NM_API const char* nm_status_name(nm_status status);

/* Message of the most recent failure on this thread. */
NM_API const char* nm_last_error(void);

NM_API void nm_string_free(char* str);

/* --- sections --------------------------------------------------------- */

/* params_json: JSON object of kind-specific parameters, e.g.
 * {"omega": 1.0471975511965976}. NULL or "" uses defaults where they exist. */
NM_API nm_status nm_section_create(const char* kind, const char* params_json, nm_section** out);

/* Full serialized form {"kind", "params", "ranges"}. */
NM_API nm_status nm_section_from_json(const char* json, nm_section** out);
NM_API nm_status nm_section_to_json(const nm_section* section, char** out);

NM_API nm_status nm_section_signature(const nm_section* section, int* d1, int* d2, int* d3, int* ambient_dim);
NM_API nm_status nm_section_constant_class(const nm_section* section, char** out);

/* sigma at (algebraic coords..., angular coords...). out must hold the
 * ambient dimension, returned in *out_dim. */
NM_API nm_status nm_section_map(const nm_section* section, const double* coords, size_t ncoords, double* out,
                                size_t* out_dim);

/* |q(x)| for surface kinds (sphere / torus variety). */
NM_API nm_status nm_section_membership_residual(const nm_section* section, const double* point, size_t dim,
                                                double* out);

NM_API void nm_section_destroy(nm_section* section);

/* --- meshes ----------------------------------------------------------- */

NM_API nm_status nm_mesh_constants(int n, double m, double* alpha, double* beta, long long* N1, long long* N2);

NM_API nm_status nm_cardinality_bound(const nm_section* section, int n, double m, long long* out);

NM_API nm_status nm_mesh_build(const nm_section* section, int n, double m, nm_family family, int dedup,
                               nm_mesh** out);
NM_API nm_status nm_mesh_from_json(const char* json, nm_mesh** out);
NM_API nm_status nm_mesh_to_json(const nm_mesh* mesh, char** out);
NM_API nm_status nm_mesh_write_csv(const nm_mesh* mesh, const char* path);

NM_API nm_status nm_mesh_dim(const nm_mesh* mesh, int* out);
NM_API nm_status nm_mesh_degree(const nm_mesh* mesh, int* n, double* m);
NM_API nm_status nm_mesh_constant(const nm_mesh* mesh, double* c);
NM_API nm_status nm_mesh_counts(const nm_mesh* mesh, long long* raw, long long* distinct);
NM_API nm_status nm_mesh_grid_shape(const nm_mesh* mesh, const long long** shape, size_t* len);

/* Borrowed pointer to row-major point data, npoints x dim. */
NM_API nm_status nm_mesh_points(const nm_mesh* mesh, const double** data, size_t* npoints);

NM_API void nm_mesh_destroy(nm_mesh* mesh);

/* --- certification ----------------------------------------------------- */

/* Randomized ratio test against a reference mesh at reference_m; when
 * with_lp is nonzero, additionally LP-certifies the norming constant over a
 * probe mesh at probe_m (probe_m >= 4 m). */
NM_API nm_status nm_certify(const nm_mesh* mesh, long long trials, unsigned long long seed, double reference_m,
                            int with_lp, double probe_m, nm_report** out);

NM_API nm_status nm_report_to_json(const nm_report* report, char** out);
NM_API nm_status nm_report_pass(const nm_report* report, int* out);
NM_API nm_status nm_report_max_ratio(const nm_report* report, double* out);
NM_API nm_status nm_report_lp_constant(const nm_report* report, double* out, int* present);
NM_API void nm_report_destroy(nm_report* report);

/* kind: "algebraic" | "periodic" | "subperiodic" (omega required for the
 * subperiodic case, ignored otherwise). */
NM_API nm_status nm_univariate_suite(const char* kind, int n, double m, double omega, char** report_json);

/* --- polynomial space -------------------------------------------------- */

NM_API nm_status nm_dimension(const nm_section* section, int n, double probe_m, char** report_json);

/* Approximate Fekete points; writes CSV when csv_path is non-NULL and
 * returns a JSON summary (points, Lebesgue estimate). */
NM_API nm_status nm_fekete(const nm_mesh* mesh, double probe_m, const char* csv_path, char** report_json);

/* Discrete least squares of a built-in test function with the operator-norm
 * bound check. */
NM_API nm_status nm_lsq(const nm_mesh* mesh, nm_test_function fn, double probe_m, char** report_json);

/* --- catalog ------------------------------------------------------------ */

/* All catalogued kinds with constant class and cardinality bound. */
NM_API nm_status nm_table(char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* NORMESH_H */
