#pragma once

#include <optional>
#include <string>

#include "polyspace.hpp"

namespace normesh {

/// Outcome of norming verification for one mesh: the randomized ratio test
/// against a finer reference mesh, plus optional exact per-point LP
/// constants over a probe mesh.
struct CertificationReport {
    std::string kind;
    int n = 0;
    double m = 0.0;
    double c_theoretical = 0.0;
    double max_ratio_observed = 0.0;
    long long trials = 0;
    unsigned long long seed = 0;
    double reference_m = 0.0;
    double reference_inflation = 0.0;  // constant c(m_ref) of the reference mesh
    long long reference_points = 0;
    std::optional<double> lp_constant;
    std::optional<long long> lp_probe_count;
    std::optional<double> lp_probe_m;
    bool pass = false;
    // environment stamp
    double rank_threshold = 0.0;
    double dedup_tolerance = 1e-10;
    int restricted_rank = 0;

    void update_pass() {
        pass = max_ratio_observed <= c_theoretical && (!lp_constant || *lp_constant <= c_theoretical);
    }
};

/// Draw random polynomials with standard-normal coefficients in the
/// mesh-orthonormal basis and record the worst ||p||_ref / ||p||_mesh.
CertificationReport random_ratio_test(const Mesh& mesh, long long trials, unsigned long long seed,
                                      double reference_m);

/// max{ |p(x)| : ||p||_mesh <= 1 } by the two norming LPs at x.
double lp_point_constant(const Mesh& mesh, const TotalDegreeBasis& basis, std::span<const double> x);

struct LPCertification {
    double constant = 0.0;
    long long probe_count = 0;
};

/// Exact norming constant of the mesh relative to a probe mesh at probe_m:
/// the max of lp_point_constant over the probe points (mesh-coincident
/// points excluded). Requires probe_m >= 4 m.
LPCertification certify_mesh_constant(const Mesh& mesh, const TotalDegreeBasis& basis, double probe_m);

enum class UnivariateKind { Algebraic, Periodic, Subperiodic };

struct UnivariateReport {
    UnivariateKind kind;
    int n = 0;
    double m = 0.0;
    std::optional<double> omega;
    double bound = 0.0;      // alpha(m) or beta(m)
    double certified = 0.0;  // LP-certified constant
    double gap = 0.0;        // bound - certified
    long long probe_count = 0;
    bool pass = false;
};

/// Certify the fundamental univariate inequalities on the 1-factor meshes:
/// algebraic (bound alpha), full-period trigonometric (alpha), subperiodic
/// trigonometric (beta).
UnivariateReport univariate_inequality_suite(UnivariateKind kind, int n, double m,
                                             std::optional<double> omega = std::nullopt);

}  // namespace normesh
