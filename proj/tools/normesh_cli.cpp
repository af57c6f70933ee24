// normesh command line: generate norming meshes, certify them, extract
// approximate Fekete points, run least-squares demos and print the section
// catalog. Talks to the library exclusively through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "normesh.h"

namespace {

using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct StringGuard {
    char* str = nullptr;
    ~StringGuard() { nm_string_free(str); }
};

[[noreturn]] void die_usage(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    std::exit(kExitUsage);
}

[[noreturn]] void die_status(nm_status status) {
    std::cerr << "error (" << nm_status_name(status) << "): " << nm_last_error() << "\n";
    const bool usage = status == NM_ERR_PARAMETER_VALIDATION || status == NM_ERR_INVALID_ARGUMENT ||
                       status == NM_ERR_INVALID_INTERVAL || status == NM_ERR_INVALID_ANGLE ||
                       status == NM_ERR_UNSUPPORTED_KIND;
    std::exit(usage ? kExitUsage : kExitFail);
}

void check(nm_status status) {
    if (status != NM_OK) die_status(status);
}

/// --param key=value with value a number, a comma list, or a bare string.
json parse_params(const std::vector<std::string>& params) {
    json out = json::object();
    for (const std::string& kv : params) {
        const size_t eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) die_usage("--param expects key=value, got '" + kv + "'");
        const std::string key = kv.substr(0, eq);
        const std::string value = kv.substr(eq + 1);
        if (value.find(',') != std::string::npos) {
            json arr = json::array();
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) {
                try {
                    size_t used = 0;
                    const double d = std::stod(item, &used);
                    if (used != item.size()) throw std::invalid_argument(item);
                    arr.push_back(d);
                } catch (const std::exception&) {
                    die_usage("vector parameter '" + key + "' has non-numeric component '" + item + "'");
                }
            }
            out[key] = arr;
            continue;
        }
        try {
            size_t used = 0;
            const double d = std::stod(value, &used);
            if (used == value.size()) {
                out[key] = d;
                continue;
            }
        } catch (const std::exception&) {
        }
        out[key] = value;  // string parameter, e.g. representation=arc_arc_full
    }
    return out;
}

nm_section* make_section_or_die(const std::string& kind, const std::vector<std::string>& params) {
    nm_section* section = nullptr;
    const json p = parse_params(params);
    check(nm_section_create(kind.c_str(), p.empty() ? "" : p.dump().c_str(), &section));
    return section;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read '" << path << "'\n";
        std::exit(kExitFail);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write '" << path << "'\n";
        std::exit(kExitFail);
    }
    out << content;
}

nm_mesh* load_mesh_or_die(const std::string& path) {
    nm_mesh* mesh = nullptr;
    check(nm_mesh_from_json(read_file(path).c_str(), &mesh));
    return mesh;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"norming meshes on sections of disk, sphere, ball and torus"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a mesh and write it as JSON (and optionally CSV)");
    std::string gen_kind, gen_out, gen_csv, gen_family = "lobatto";
    std::vector<std::string> gen_params;
    int gen_n = 0;
    double gen_m = 2.0;
    bool gen_dedup = false;
    gen->add_option("--kind", gen_kind, "section kind")->required();
    gen->add_option("--param", gen_params, "kind parameter key=value (repeatable; angles in radians)");
    gen->add_option("--n", gen_n, "polynomial degree")->required();
    gen->add_option("--m", gen_m, "oversampling factor (> 1)")->required();
    gen->add_option("--family", gen_family, "node family: lobatto | zeros");
    gen->add_flag("--dedup", gen_dedup, "merge coincident image points");
    gen->add_option("--out", gen_out, "output mesh JSON path")->required();
    gen->add_option("--csv", gen_csv, "optional CSV export of the points");

    // verify
    auto* verify = app.add_subcommand("verify", "certify the norming inequality for a mesh");
    std::string verify_mesh, verify_report;
    long long verify_trials = 1000;
    unsigned long long verify_seed = 1;
    double verify_ref_m = 8.0, verify_probe_m = 0.0;
    bool verify_lp = false;
    verify->add_option("--mesh", verify_mesh, "mesh JSON path")->required();
    verify->add_option("--trials", verify_trials, "random polynomial trials");
    verify->add_option("--seed", verify_seed, "RNG seed");
    verify->add_option("--ref-m", verify_ref_m, "reference mesh oversampling factor");
    verify->add_flag("--lp", verify_lp, "also LP-certify the exact constant on a probe mesh");
    verify->add_option("--probe-m", verify_probe_m, "probe mesh factor for --lp (default 4 m)");
    verify->add_option("--report", verify_report, "report JSON output path");

    // fekete
    auto* fekete = app.add_subcommand("fekete", "extract approximate Fekete points from a mesh");
    std::string fekete_mesh, fekete_out;
    double fekete_probe_m = 8.0;
    fekete->add_option("--mesh", fekete_mesh, "mesh JSON path")->required();
    fekete->add_option("--out", fekete_out, "CSV output path")->required();
    fekete->add_option("--probe-m", fekete_probe_m, "probe factor for the Lebesgue estimate");

    // lsq
    auto* lsq = app.add_subcommand("lsq", "discrete least squares of a test function on a mesh");
    std::string lsq_mesh, lsq_function = "one", lsq_report;
    double lsq_probe_m = 4.0;
    lsq->add_option("--mesh", lsq_mesh, "mesh JSON path")->required();
    lsq->add_option("--function", lsq_function, "test function: one | coord1 | runge");
    lsq->add_option("--probe-m", lsq_probe_m, "probe factor for the operator norm estimate");
    lsq->add_option("--report", lsq_report, "report JSON output path");

    // dim
    auto* dim = app.add_subcommand("dim", "numeric dimension of the polynomial space on a section");
    std::string dim_kind;
    std::vector<std::string> dim_params;
    int dim_n = 0;
    double dim_probe_m = 4.0;
    dim->add_option("--kind", dim_kind, "section kind")->required();
    dim->add_option("--param", dim_params, "kind parameter key=value (repeatable)");
    dim->add_option("--n", dim_n, "polynomial degree")->required();
    dim->add_option("--probe-m", dim_probe_m, "probe mesh factor");

    // table
    auto* table = app.add_subcommand("table", "print the section catalog with mesh parameters");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::exit(app.exit(e));
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::exit(kExitUsage);
    }

    if (gen->parsed()) {
        nm_section* section = make_section_or_die(gen_kind, gen_params);
        nm_family family;
        if (gen_family == "lobatto") family = NM_FAMILY_LOBATTO;
        else if (gen_family == "zeros") family = NM_FAMILY_CHEBZEROS;
        else die_usage("--family must be lobatto or zeros");
        nm_mesh* mesh = nullptr;
        check(nm_mesh_build(section, gen_n, gen_m, family, gen_dedup ? 1 : 0, &mesh));
        StringGuard js;
        check(nm_mesh_to_json(mesh, &js.str));
        write_file(gen_out, js.str);
        if (!gen_csv.empty()) check(nm_mesh_write_csv(mesh, gen_csv.c_str()));
        long long raw = 0, distinct = 0;
        double c = 0;
        nm_mesh_counts(mesh, &raw, &distinct);
        nm_mesh_constant(mesh, &c);
        std::cout << "mesh " << gen_kind << " n=" << gen_n << " m=" << gen_m << " c=" << c << " raw=" << raw
                  << " distinct=" << distinct << " -> " << gen_out << "\n";
        nm_mesh_destroy(mesh);
        nm_section_destroy(section);
        return kExitPass;
    }

    if (verify->parsed()) {
        nm_mesh* mesh = load_mesh_or_die(verify_mesh);
        double m = 0;
        nm_mesh_degree(mesh, nullptr, &m);
        const double probe_m = verify_probe_m > 0 ? verify_probe_m : 4.0 * m;
        nm_report* report = nullptr;
        check(nm_certify(mesh, verify_trials, verify_seed, verify_ref_m, verify_lp ? 1 : 0, probe_m, &report));
        StringGuard js;
        check(nm_report_to_json(report, &js.str));
        if (!verify_report.empty()) write_file(verify_report, js.str);
        else std::cout << js.str << "\n";
        int pass = 0;
        nm_report_pass(report, &pass);
        double ratio = 0;
        nm_report_max_ratio(report, &ratio);
        std::cout << (pass ? "PASS" : "FAIL") << " max_ratio=" << ratio;
        int has_lp = 0;
        double lp = 0;
        nm_report_lp_constant(report, &lp, &has_lp);
        if (has_lp) std::cout << " lp_constant=" << lp;
        std::cout << "\n";
        nm_report_destroy(report);
        nm_mesh_destroy(mesh);
        return pass ? kExitPass : kExitFail;
    }

    if (fekete->parsed()) {
        nm_mesh* mesh = load_mesh_or_die(fekete_mesh);
        StringGuard js;
        check(nm_fekete(mesh, fekete_probe_m, fekete_out.c_str(), &js.str));
        const json rep = json::parse(js.str);
        std::cout << "fekete points: " << rep["count"] << " lebesgue_estimate=" << rep["lebesgue_estimate"]
                  << " -> " << fekete_out << "\n";
        nm_mesh_destroy(mesh);
        return kExitPass;
    }

    if (lsq->parsed()) {
        nm_mesh* mesh = load_mesh_or_die(lsq_mesh);
        nm_test_function fn;
        if (lsq_function == "one") fn = NM_FN_ONE;
        else if (lsq_function == "coord1") fn = NM_FN_COORD1;
        else if (lsq_function == "runge") fn = NM_FN_RUNGE;
        else die_usage("--function must be one, coord1 or runge");
        StringGuard js;
        check(nm_lsq(mesh, fn, lsq_probe_m, &js.str));
        if (!lsq_report.empty()) write_file(lsq_report, js.str);
        const json rep = json::parse(js.str);
        std::cout << "lsq " << lsq_function << ": residual=" << rep["residual_mesh"]
                  << " operator_norm=" << rep["operator_norm_estimate"] << " bound=" << rep["operator_norm_bound"]
                  << " bound_ok=" << rep["bound_ok"] << "\n";
        nm_mesh_destroy(mesh);
        return rep["bound_ok"].get<bool>() ? kExitPass : kExitFail;
    }

    if (dim->parsed()) {
        nm_section* section = make_section_or_die(dim_kind, dim_params);
        StringGuard js;
        check(nm_dimension(section, dim_n, dim_probe_m, &js.str));
        std::cout << js.str << "\n";
        nm_section_destroy(section);
        return kExitPass;
    }

    if (table->parsed()) {
        StringGuard js;
        check(nm_table(&js.str));
        const json rows = json::parse(js.str);
        std::printf("%-26s %-30s %-12s %-10s %s\n", "kind", "section", "class", "bound", "params");
        for (const auto& row : rows["sections"]) {
            std::printf("%-26s %-30s %-12s %-10s %s\n", row["kind"].get<std::string>().c_str(),
                        row["label"].get<std::string>().c_str(), row["constant_class"].get<std::string>().c_str(),
                        row["cardinality_bound"].get<std::string>().c_str(),
                        row["params"].get<std::string>().c_str());
        }
        return kExitPass;
    }

    return kExitUsage;
}
