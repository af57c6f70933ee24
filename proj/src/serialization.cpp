#include "serialization.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace normesh {

namespace {

Json params_to_json(const Params& params) {
    Json out = Json::object();
    for (const auto& [key, value] : params) {
        if (const double* d = std::get_if<double>(&value)) out[key] = *d;
        else if (const auto* v = std::get_if<std::vector<double>>(&value)) out[key] = *v;
        else out[key] = std::get<std::string>(value);
    }
    return out;
}

Params params_from_json(const Json& j) {
    Params out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const Json& v = it.value();
        if (v.is_number()) out[it.key()] = v.get<double>();
        else if (v.is_array()) out[it.key()] = v.get<std::vector<double>>();
        else if (v.is_string()) out[it.key()] = v.get<std::string>();
        else fail(ErrorCode::JsonError, "parameter '" + it.key() + "' must be a number, array or string");
    }
    return out;
}

}  // namespace

Json section_to_json(const Section& spec) {
    Json j;
    j["kind"] = spec.kind();
    j["params"] = params_to_json(spec.params());
    Json ranges;
    Json alg = Json::array();
    for (const auto& iv : spec.algebraic_ranges()) alg.push_back(Json::array({iv.a, iv.b}));
    Json ang = Json::array();
    for (const auto& av : spec.angular_ranges()) {
        Json a;
        a["u"] = av.u;
        a["v"] = av.v;
        a["periodic"] = av.kind == AngularKind::Periodic;
        ang.push_back(a);
    }
    ranges["algebraic"] = alg;
    ranges["angular"] = ang;
    j["ranges"] = ranges;
    return j;
}

Section section_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind")) fail(ErrorCode::JsonError, "section JSON needs a 'kind' field");
    const std::string kind = j.at("kind").get<std::string>();
    Params params;
    if (j.contains("params")) params = params_from_json(j.at("params"));
    Section spec = make_section(kind, params);
    if (j.contains("ranges")) {
        const Json& r = j.at("ranges");
        const size_t na = r.contains("algebraic") ? r.at("algebraic").size() : 0;
        const size_t nn = r.contains("angular") ? r.at("angular").size() : 0;
        if (na != spec.algebraic_ranges().size() || nn != spec.angular_ranges().size())
            fail(ErrorCode::JsonError, "section ranges do not match the kind '" + kind + "'");
    }
    return spec;
}

Json mesh_to_json(const Mesh& mesh) {
    Json j;
    j["spec"] = section_to_json(mesh.spec);
    j["n"] = mesh.n;
    j["m"] = mesh.m;
    j["c"] = mesh.c;
    j["family"] = node_family_name(mesh.family);
    j["grid_shape"] = mesh.grid_shape;
    Json pts = Json::array();
    const int dim = mesh.dim();
    for (size_t i = 0; i < mesh.count(); ++i) {
        Json p = Json::array();
        const double* x = mesh.point(i);
        for (int d = 0; d < dim; ++d) p.push_back(x[d]);
        pts.push_back(std::move(p));
    }
    j["points"] = pts;
    return j;
}

Mesh mesh_from_json(const Json& j) {
    for (const char* field : {"spec", "n", "m", "c", "family", "grid_shape", "points"})
        if (!j.contains(field)) fail(ErrorCode::JsonError, std::string("mesh JSON missing field '") + field + "'");
    Mesh mesh;
    mesh.spec = section_from_json(j.at("spec"));
    mesh.n = j.at("n").get<int>();
    mesh.m = j.at("m").get<double>();
    mesh.c = j.at("c").get<double>();
    const std::string family = j.at("family").get<std::string>();
    if (family == "lobatto") mesh.family = NodeFamily::Lobatto;
    else if (family == "zeros") mesh.family = NodeFamily::ChebZeros;
    else fail(ErrorCode::JsonError, "mesh family must be 'lobatto' or 'zeros'");
    mesh.grid_shape = j.at("grid_shape").get<std::vector<long long>>();
    if (mesh.grid_shape.size() != mesh.spec.factor_count())
        fail(ErrorCode::JsonError, "grid_shape length does not match the section factors");

    const int dim = mesh.spec.ambient_dim();
    const Json& pts = j.at("points");
    mesh.points.reserve(pts.size() * static_cast<size_t>(dim));
    for (const auto& p : pts) {
        if (!p.is_array() || p.size() != static_cast<size_t>(dim))
            fail(ErrorCode::JsonError, "mesh point with wrong dimension");
        for (const auto& c : p) mesh.points.push_back(c.get<double>());
    }
    mesh.raw_count = 1;
    for (long long s : mesh.grid_shape) mesh.raw_count *= s;
    mesh.distinct_count = static_cast<long long>(pts.size());
    mesh.deduped = mesh.distinct_count != mesh.raw_count;
    const double expected_c = mesh.spec.signature().constant(mesh.m);
    if (std::abs(expected_c - mesh.c) > 1e-12 * expected_c)
        fail(ErrorCode::JsonError, "mesh constant c does not match the section signature");
    return mesh;
}

Json report_to_json(const CertificationReport& rep) {
    Json j;
    j["kind"] = rep.kind;
    j["n"] = rep.n;
    j["m"] = rep.m;
    j["c_theoretical"] = rep.c_theoretical;
    j["max_ratio_observed"] = rep.max_ratio_observed;
    j["trials"] = rep.trials;
    j["seed"] = rep.seed;
    j["reference_m"] = rep.reference_m;
    j["reference_inflation"] = rep.reference_inflation;
    j["reference_points"] = rep.reference_points;
    if (rep.lp_constant) {
        j["lp_constant"] = *rep.lp_constant;
        j["lp_probe_count"] = *rep.lp_probe_count;
        j["lp_probe_m"] = *rep.lp_probe_m;
    }
    j["pass"] = rep.pass;
    Json env;
    env["rank_threshold"] = rep.rank_threshold;
    env["dedup_tolerance"] = rep.dedup_tolerance;
    env["restricted_rank"] = rep.restricted_rank;
    j["environment"] = env;
    return j;
}

Json dimension_to_json(const Section& spec, int n, const DimensionInfo& info) {
    Json j;
    j["kind"] = spec.kind();
    j["n"] = n;
    j["ambient_count"] = info.ambient_count;
    if (info.variety_count) j["variety_count"] = *info.variety_count;
    j["numeric_rank"] = info.numeric_rank;
    j["lambda"] = info.lambda;
    j["gamma"] = info.gamma;
    if (info.torus_text_count) {
        j["torus_text_count"] = *info.torus_text_count;
        j["torus_count_discrepancy"] = info.torus_count_discrepancy;
        if (info.torus_count_discrepancy)
            j["note"] = "the 2n^2 torus dimension quoted in prose differs from the variety formula; "
                        "the numeric rank decides";
    }
    j["probe_m"] = info.probe_m;
    j["probe_points"] = info.probe_points;
    j["sigma_max"] = info.sigma_max;
    j["threshold"] = info.threshold;
    return j;
}

Json fekete_to_json(const FeketeResult& fek) {
    Json j;
    j["count"] = fek.indices.size();
    j["dim"] = fek.dim;
    j["indices"] = fek.indices;
    Json pts = Json::array();
    for (size_t i = 0; i < fek.indices.size(); ++i) {
        Json p = Json::array();
        for (int d = 0; d < fek.dim; ++d) p.push_back(fek.points[i * static_cast<size_t>(fek.dim) + static_cast<size_t>(d)]);
        pts.push_back(std::move(p));
    }
    j["points"] = pts;
    j["lebesgue_estimate"] = fek.lebesgue_estimate;
    j["probe_m"] = fek.probe_m;
    j["probe_points"] = fek.probe_points;
    return j;
}

Json lsfit_to_json(const Mesh& mesh, const std::string& function, const LSFit& fit) {
    Json j;
    j["kind"] = mesh.spec.kind();
    j["n"] = mesh.n;
    j["m"] = mesh.m;
    j["function"] = function;
    j["card"] = mesh.count();
    std::vector<double> coef(fit.coefficients.data(), fit.coefficients.data() + fit.coefficients.size());
    j["coefficients"] = coef;
    j["residual_mesh"] = fit.residual_mesh;
    j["operator_norm_estimate"] = fit.operator_norm_estimate;
    j["operator_norm_bound"] = fit.operator_norm_bound;
    j["bound_ok"] = fit.bound_ok;
    j["conditioning_warning"] = fit.conditioning_warning;
    j["orth_residual"] = fit.orth_residual;
    j["probe_m"] = fit.probe_m;
    return j;
}

Json univariate_to_json(const UnivariateReport& rep) {
    Json j;
    switch (rep.kind) {
        case UnivariateKind::Algebraic: j["kind"] = "algebraic"; break;
        case UnivariateKind::Periodic: j["kind"] = "periodic"; break;
        case UnivariateKind::Subperiodic: j["kind"] = "subperiodic"; break;
    }
    j["n"] = rep.n;
    j["m"] = rep.m;
    if (rep.omega) j["omega"] = *rep.omega;
    j["bound"] = rep.bound;
    j["certified"] = rep.certified;
    j["gap"] = rep.gap;
    j["probe_count"] = rep.probe_count;
    j["pass"] = rep.pass;
    return j;
}

Json table_json() {
    Json rows = Json::array();
    for (const auto& info : section_catalog()) {
        Section spec = make_section(info.name, info.default_params);
        const Signature sig = spec.signature();
        Json row;
        row["kind"] = info.name;
        row["label"] = info.label;
        row["params"] = info.params_help;
        row["d1"] = sig.d1;
        row["d2"] = sig.d2;
        row["d3"] = sig.d3;
        row["ambient_dim"] = sig.ambient_dim;
        row["constant_class"] = sig.constant_class();
        row["cardinality_bound"] = sig.bound_shape();
        rows.push_back(std::move(row));
    }
    Json j;
    j["sections"] = rows;
    return j;
}

void write_points_csv(const std::string& path, const std::vector<double>& points, int dim) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) fail(ErrorCode::IoError, "cannot open '" + path + "' for writing");
    const size_t count = points.size() / static_cast<size_t>(dim);
    for (size_t i = 0; i < count; ++i) {
        for (int d = 0; d < dim; ++d)
            std::fprintf(f, "%.17g%s", points[i * static_cast<size_t>(dim) + static_cast<size_t>(d)],
                         d + 1 < dim ? "," : "\n");
    }
    std::fclose(f);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::IoError, "cannot open '" + path + "' for writing");
    out << content;
}

}  // namespace normesh
