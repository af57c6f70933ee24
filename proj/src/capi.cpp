#include "normesh.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "serialization.hpp"

using namespace normesh;

struct nm_section {
    Section spec;
};

struct nm_mesh {
    Mesh mesh;
};

struct nm_report {
    CertificationReport report;
};

namespace {

thread_local std::string g_last_error;

nm_status code_to_status(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return NM_ERR_INVALID_ARGUMENT;
        case ErrorCode::InvalidInterval: return NM_ERR_INVALID_INTERVAL;
        case ErrorCode::InvalidAngle: return NM_ERR_INVALID_ANGLE;
        case ErrorCode::InvalidFactor: return NM_ERR_INVALID_FACTOR;
        case ErrorCode::ParameterValidation: return NM_ERR_PARAMETER_VALIDATION;
        case ErrorCode::DomainError: return NM_ERR_DOMAIN;
        case ErrorCode::UnsupportedKind: return NM_ERR_UNSUPPORTED_KIND;
        case ErrorCode::ScalingError: return NM_ERR_SCALING;
        case ErrorCode::DeterminingSetViolation: return NM_ERR_DETERMINING_SET;
        case ErrorCode::ExtractionFailure: return NM_ERR_EXTRACTION_FAILURE;
        case ErrorCode::NumericalError: return NM_ERR_NUMERICAL;
        case ErrorCode::JsonError: return NM_ERR_JSON;
        case ErrorCode::IoError: return NM_ERR_IO;
        case ErrorCode::InternalError: return NM_ERR_INTERNAL;
    }
    return NM_ERR_INTERNAL;
}

template <class F>
nm_status guarded(F&& f) {
    try {
        f();
        return NM_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return code_to_status(e.code());
    } catch (const nlohmann::json::exception& e) {
        g_last_error = e.what();
        return NM_ERR_JSON;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return NM_ERR_INTERNAL;
    }
}

nm_status require(bool cond, const char* msg) {
    if (cond) return NM_OK;
    g_last_error = msg;
    return NM_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

extern "C" {

const char* nm_status_name(nm_status status) {
    switch (status) {
        case NM_OK: return "ok";
        case NM_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case NM_ERR_INVALID_INTERVAL: return "invalid_interval";
        case NM_ERR_INVALID_ANGLE: return "invalid_angle";
        case NM_ERR_INVALID_FACTOR: return "invalid_factor";
        case NM_ERR_PARAMETER_VALIDATION: return "parameter_validation";
        case NM_ERR_DOMAIN: return "domain_error";
        case NM_ERR_UNSUPPORTED_KIND: return "unsupported_kind";
        case NM_ERR_SCALING: return "scaling_error";
        case NM_ERR_DETERMINING_SET: return "determining_set_violation";
        case NM_ERR_EXTRACTION_FAILURE: return "extraction_failure";
        case NM_ERR_NUMERICAL: return "numerical_error";
        case NM_ERR_JSON: return "json_error";
        case NM_ERR_IO: return "io_error";
        case NM_ERR_INTERNAL: return "internal_error";
    }
    return "unknown";
}

const char* nm_last_error(void) { return g_last_error.c_str(); }

void nm_string_free(char* str) { std::free(str); }

nm_status nm_section_create(const char* kind, const char* params_json, nm_section** out) {
    if (nm_status s = require(kind && out, "kind and out must be non-null")) return s;
    return guarded([&] {
        Params params;
        if (params_json && *params_json) {
            Json j = Json::parse(params_json);
            Json wrapper;
            wrapper["kind"] = kind;
            wrapper["params"] = j;
            *out = new nm_section{section_from_json(wrapper)};
            return;
        }
        *out = new nm_section{make_section(kind, params)};
    });
}

nm_status nm_section_from_json(const char* json, nm_section** out) {
    if (nm_status s = require(json && out, "json and out must be non-null")) return s;
    return guarded([&] { *out = new nm_section{section_from_json(Json::parse(json))}; });
}

nm_status nm_section_to_json(const nm_section* section, char** out) {
    if (nm_status s = require(section && out, "section and out must be non-null")) return s;
    return guarded([&] { *out = dup_string(section_to_json(section->spec).dump()); });
}

nm_status nm_section_signature(const nm_section* section, int* d1, int* d2, int* d3, int* ambient_dim) {
    if (nm_status s = require(section != nullptr, "section must be non-null")) return s;
    return guarded([&] {
        const Signature sig = section->spec.signature();
        if (d1) *d1 = sig.d1;
        if (d2) *d2 = sig.d2;
        if (d3) *d3 = sig.d3;
        if (ambient_dim) *ambient_dim = sig.ambient_dim;
    });
}

nm_status nm_section_constant_class(const nm_section* section, char** out) {
    if (nm_status s = require(section && out, "section and out must be non-null")) return s;
    return guarded([&] { *out = dup_string(section->spec.signature().constant_class()); });
}

nm_status nm_section_map(const nm_section* section, const double* coords, size_t ncoords, double* out,
                         size_t* out_dim) {
    if (nm_status s = require(section && coords && out, "section, coords and out must be non-null")) return s;
    return guarded([&] {
        auto pt = section->spec.evaluate_map(std::span<const double>(coords, ncoords));
        for (size_t i = 0; i < pt.size(); ++i) out[i] = pt[i];
        if (out_dim) *out_dim = pt.size();
    });
}

nm_status nm_section_membership_residual(const nm_section* section, const double* point, size_t dim, double* out) {
    if (nm_status s = require(section && point && out, "section, point and out must be non-null")) return s;
    return guarded([&] { *out = section->spec.membership_residual(std::span<const double>(point, dim)); });
}

void nm_section_destroy(nm_section* section) { delete section; }

nm_status nm_mesh_constants(int n, double m, double* alpha, double* beta, long long* N1, long long* N2) {
    return guarded([&] {
        const MeshConstants mc = mesh_constants(n, m);
        if (alpha) *alpha = mc.alpha;
        if (beta) *beta = mc.beta;
        if (N1) *N1 = mc.N1;
        if (N2) *N2 = mc.N2;
    });
}

nm_status nm_cardinality_bound(const nm_section* section, int n, double m, long long* out) {
    if (nm_status s = require(section && out, "section and out must be non-null")) return s;
    return guarded([&] { *out = cardinality_bound(section->spec, n, m); });
}

nm_status nm_mesh_build(const nm_section* section, int n, double m, nm_family family, int dedup, nm_mesh** out) {
    if (nm_status s = require(section && out, "section and out must be non-null")) return s;
    return guarded([&] {
        const NodeFamily fam = family == NM_FAMILY_CHEBZEROS ? NodeFamily::ChebZeros : NodeFamily::Lobatto;
        *out = new nm_mesh{build_mesh(section->spec, n, m, fam, dedup != 0)};
    });
}

nm_status nm_mesh_from_json(const char* json, nm_mesh** out) {
    if (nm_status s = require(json && out, "json and out must be non-null")) return s;
    return guarded([&] { *out = new nm_mesh{mesh_from_json(Json::parse(json))}; });
}

nm_status nm_mesh_to_json(const nm_mesh* mesh, char** out) {
    if (nm_status s = require(mesh && out, "mesh and out must be non-null")) return s;
    return guarded([&] { *out = dup_string(mesh_to_json(mesh->mesh).dump()); });
}

nm_status nm_mesh_write_csv(const nm_mesh* mesh, const char* path) {
    if (nm_status s = require(mesh && path, "mesh and path must be non-null")) return s;
    return guarded([&] { write_points_csv(path, mesh->mesh.points, mesh->mesh.dim()); });
}

nm_status nm_mesh_dim(const nm_mesh* mesh, int* out) {
    if (nm_status s = require(mesh && out, "mesh and out must be non-null")) return s;
    *out = mesh->mesh.dim();
    return NM_OK;
}

nm_status nm_mesh_degree(const nm_mesh* mesh, int* n, double* m) {
    if (nm_status s = require(mesh != nullptr, "mesh must be non-null")) return s;
    if (n) *n = mesh->mesh.n;
    if (m) *m = mesh->mesh.m;
    return NM_OK;
}

nm_status nm_mesh_constant(const nm_mesh* mesh, double* c) {
    if (nm_status s = require(mesh && c, "mesh and c must be non-null")) return s;
    *c = mesh->mesh.c;
    return NM_OK;
}

nm_status nm_mesh_counts(const nm_mesh* mesh, long long* raw, long long* distinct) {
    if (nm_status s = require(mesh != nullptr, "mesh must be non-null")) return s;
    if (raw) *raw = mesh->mesh.raw_count;
    if (distinct) *distinct = mesh->mesh.distinct_count;
    return NM_OK;
}

nm_status nm_mesh_grid_shape(const nm_mesh* mesh, const long long** shape, size_t* len) {
    if (nm_status s = require(mesh && shape && len, "mesh, shape and len must be non-null")) return s;
    *shape = mesh->mesh.grid_shape.data();
    *len = mesh->mesh.grid_shape.size();
    return NM_OK;
}

nm_status nm_mesh_points(const nm_mesh* mesh, const double** data, size_t* npoints) {
    if (nm_status s = require(mesh && data && npoints, "mesh, data and npoints must be non-null")) return s;
    *data = mesh->mesh.points.data();
    *npoints = mesh->mesh.count();
    return NM_OK;
}

void nm_mesh_destroy(nm_mesh* mesh) { delete mesh; }

nm_status nm_certify(const nm_mesh* mesh, long long trials, unsigned long long seed, double reference_m,
                     int with_lp, double probe_m, nm_report** out) {
    if (nm_status s = require(mesh && out, "mesh and out must be non-null")) return s;
    return guarded([&] {
        CertificationReport rep = random_ratio_test(mesh->mesh, trials, seed, reference_m);
        if (with_lp) {
            TotalDegreeBasis basis(mesh->mesh.spec, mesh->mesh.n);
            const LPCertification lp = certify_mesh_constant(mesh->mesh, basis, probe_m);
            rep.lp_constant = lp.constant;
            rep.lp_probe_count = lp.probe_count;
            rep.lp_probe_m = probe_m;
            rep.update_pass();
        }
        *out = new nm_report{std::move(rep)};
    });
}

nm_status nm_report_to_json(const nm_report* report, char** out) {
    if (nm_status s = require(report && out, "report and out must be non-null")) return s;
    return guarded([&] { *out = dup_string(report_to_json(report->report).dump(2)); });
}

nm_status nm_report_pass(const nm_report* report, int* out) {
    if (nm_status s = require(report && out, "report and out must be non-null")) return s;
    *out = report->report.pass ? 1 : 0;
    return NM_OK;
}

nm_status nm_report_max_ratio(const nm_report* report, double* out) {
    if (nm_status s = require(report && out, "report and out must be non-null")) return s;
    *out = report->report.max_ratio_observed;
    return NM_OK;
}

nm_status nm_report_lp_constant(const nm_report* report, double* out, int* present) {
    if (nm_status s = require(report != nullptr, "report must be non-null")) return s;
    if (present) *present = report->report.lp_constant ? 1 : 0;
    if (out) *out = report->report.lp_constant.value_or(0.0);
    return NM_OK;
}

void nm_report_destroy(nm_report* report) { delete report; }

nm_status nm_univariate_suite(const char* kind, int n, double m, double omega, char** report_json) {
    if (nm_status s = require(kind && report_json, "kind and report_json must be non-null")) return s;
    return guarded([&] {
        UnivariateKind k;
        std::optional<double> w;
        const std::string name(kind);
        if (name == "algebraic") k = UnivariateKind::Algebraic;
        else if (name == "periodic") k = UnivariateKind::Periodic;
        else if (name == "subperiodic") {
            k = UnivariateKind::Subperiodic;
            w = omega;
        } else {
            fail(ErrorCode::InvalidArgument, "kind must be algebraic, periodic or subperiodic");
        }
        *report_json = dup_string(univariate_to_json(univariate_inequality_suite(k, n, m, w)).dump(2));
    });
}

nm_status nm_dimension(const nm_section* section, int n, double probe_m, char** report_json) {
    if (nm_status s = require(section && report_json, "section and report_json must be non-null")) return s;
    return guarded([&] {
        const DimensionInfo info = numeric_dimension(section->spec, n, probe_m);
        *report_json = dup_string(dimension_to_json(section->spec, n, info).dump(2));
    });
}

nm_status nm_fekete(const nm_mesh* mesh, double probe_m, const char* csv_path, char** report_json) {
    if (nm_status s = require(mesh && report_json, "mesh and report_json must be non-null")) return s;
    return guarded([&] {
        TotalDegreeBasis basis(mesh->mesh.spec, mesh->mesh.n);
        const FeketeResult fek = approx_fekete(mesh->mesh, basis, probe_m);
        if (csv_path) write_points_csv(csv_path, fek.points, fek.dim);
        *report_json = dup_string(fekete_to_json(fek).dump(2));
    });
}

nm_status nm_lsq(const nm_mesh* mesh, nm_test_function fn, double probe_m, char** report_json) {
    if (nm_status s = require(mesh && report_json, "mesh and report_json must be non-null")) return s;
    return guarded([&] {
        Mesh work = mesh->mesh;
        if (!work.deduped) {
            work.distinct_count = dedup_points(work.points, work.dim());
            work.deduped = true;
        }
        const size_t count = work.count();
        const int dim = work.dim();
        std::vector<double> samples(count);
        std::string name;
        for (size_t i = 0; i < count; ++i) {
            const double* x = work.point(i);
            switch (fn) {
                case NM_FN_ONE:
                    samples[i] = 1.0;
                    name = "one";
                    break;
                case NM_FN_COORD1:
                    samples[i] = x[0];
                    name = "coord1";
                    break;
                case NM_FN_RUNGE: {
                    double r2 = 0.0;
                    for (int d = 0; d < dim; ++d) r2 += x[d] * x[d];
                    samples[i] = 1.0 / (1.0 + 25.0 * r2);
                    name = "runge";
                    break;
                }
            }
        }
        TotalDegreeBasis basis(work.spec, work.n);
        const LSFit fit = ls_projection(work, basis, samples, probe_m);
        *report_json = dup_string(lsfit_to_json(work, name, fit).dump(2));
    });
}

nm_status nm_table(char** json_out) {
    if (nm_status s = require(json_out != nullptr, "json_out must be non-null")) return s;
    return guarded([&] { *json_out = dup_string(table_json().dump(2)); });
}

}  // extern "C"
