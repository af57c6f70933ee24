#include "certify.hpp"

#include <atomic>
#include <cmath>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "simplex.hpp"
#include "threads.hpp"

namespace normesh {

namespace {

/// Mesh with coincident points merged plus its restricted basis and a
/// well-conditioned start basis for the norming LPs.
struct MeshContext {
    Mesh mesh;  // deduped copy
    RestrictedBasis rb;
    std::vector<size_t> start_rows;
};

MeshContext make_context(const Mesh& mesh) {
    MeshContext ctx{mesh, {TotalDegreeBasis(mesh.spec, mesh.n), {}, {}}, {}};
    if (!ctx.mesh.deduped) {
        ctx.mesh.distinct_count = dedup_points(ctx.mesh.points, ctx.mesh.dim());
        ctx.mesh.deduped = true;
    }
    ctx.rb = restrict_to_mesh(ctx.mesh);
    ctx.start_rows = greedy_rows(ctx.rb.mesh_values, ctx.rb.rank());
    return ctx;
}

struct CellKey {
    long long c[3];
    bool operator==(const CellKey& o) const { return c[0] == o.c[0] && c[1] == o.c[1] && c[2] == o.c[2]; }
};
struct CellHash {
    size_t operator()(const CellKey& k) const {
        size_t h = 1469598103934665603ull;
        for (long long v : k.c) {
            h ^= static_cast<size_t>(v);
            h *= 1099511628211ull;
        }
        return h;
    }
};

/// Probe points farther than tol from every mesh point.
std::vector<double> filter_probe_points(const Mesh& mesh, const Mesh& probe, double tol) {
    const int dim = mesh.dim();
    const double cell = 2.0 * std::max(tol, 1e-300);
    std::unordered_map<CellKey, std::vector<size_t>, CellHash> grid;
    auto key_of = [&](const double* p, long long ox, long long oy, long long oz) {
        CellKey k{{0, 0, 0}};
        const long long off[3] = {ox, oy, oz};
        for (int d = 0; d < dim; ++d) k.c[d] = static_cast<long long>(std::floor(p[d] / cell)) + off[d];
        return k;
    };
    for (size_t i = 0; i < mesh.count(); ++i) grid[key_of(mesh.point(i), 0, 0, 0)].push_back(i);

    std::vector<double> keep;
    keep.reserve(probe.points.size());
    for (size_t i = 0; i < probe.count(); ++i) {
        const double* p = probe.point(i);
        bool coincident = false;
        for (long long ox = -1; ox <= 1 && !coincident; ++ox)
            for (long long oy = (dim > 1 ? -1 : 0); oy <= (dim > 1 ? 1 : 0) && !coincident; ++oy)
                for (long long oz = (dim > 2 ? -1 : 0); oz <= (dim > 2 ? 1 : 0) && !coincident; ++oz) {
                    auto it = grid.find(key_of(p, ox, oy, oz));
                    if (it == grid.end()) continue;
                    for (size_t j : it->second) {
                        const double* q = mesh.point(j);
                        double d2 = 0.0;
                        for (int d = 0; d < dim; ++d) d2 += (p[d] - q[d]) * (p[d] - q[d]);
                        if (d2 <= tol * tol) {
                            coincident = true;
                            break;
                        }
                    }
                }
        if (!coincident) keep.insert(keep.end(), p, p + dim);
    }
    return keep;
}

}  // namespace

CertificationReport random_ratio_test(const Mesh& mesh, long long trials, unsigned long long seed,
                                      double reference_m) {
    if (trials < 1) fail(ErrorCode::InvalidArgument, "random_ratio_test requires at least one trial");
    if (!(reference_m >= mesh.m)) fail(ErrorCode::InvalidArgument, "reference_m must not be finer than the mesh m");

    const MeshContext ctx = make_context(mesh);
    const int r = ctx.rb.rank();
    const Mesh ref = build_mesh(mesh.spec, mesh.n, reference_m, mesh.family, false);

    CertificationReport rep;
    rep.kind = mesh.spec.kind();
    rep.n = mesh.n;
    rep.m = mesh.m;
    rep.c_theoretical = mesh.c;
    rep.trials = trials;
    rep.seed = seed;
    rep.reference_m = reference_m;
    rep.reference_inflation = mesh.spec.signature().constant(reference_m);
    rep.reference_points = static_cast<long long>(ref.count());
    rep.rank_threshold = ctx.rb.threshold;
    rep.restricted_rank = r;

    // coefficients: one independent engine per trial so that the report is
    // reproducible regardless of evaluation order
    Eigen::MatrixXd C(r, trials);
    for (long long t = 0; t < trials; ++t) {
        std::mt19937_64 rng(seed + static_cast<unsigned long long>(t));
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int k = 0; k < r; ++k) C(k, t) = gauss(rng);
    }

    Eigen::VectorXd mesh_norm = (ctx.rb.mesh_values * C).cwiseAbs().colwise().maxCoeff();
    for (long long t = 0; t < trials; ++t) {
        if (mesh_norm(t) <= 1e-12 * C.col(t).norm())
            fail(ErrorCode::DeterminingSetViolation,
                 "a random polynomial vanished on the mesh; the mesh is not determining");
    }

    Eigen::VectorXd ref_norm = Eigen::VectorXd::Zero(trials);
    const size_t chunk = 4096;
    const int dim = mesh.dim();
    for (size_t start = 0; start < ref.count(); start += chunk) {
        const size_t take = std::min(chunk, ref.count() - start);
        Eigen::MatrixXd Qc = ctx.rb.evaluate(
            std::span<const double>(ref.points.data() + start * static_cast<size_t>(dim),
                                    take * static_cast<size_t>(dim)),
            take);
        ref_norm = ref_norm.cwiseMax((Qc * C).cwiseAbs().colwise().maxCoeff().transpose());
    }

    rep.max_ratio_observed = (ref_norm.array() / mesh_norm.array()).maxCoeff();
    rep.update_pass();
    return rep;
}

double lp_point_constant(const Mesh& mesh, const TotalDegreeBasis& basis, std::span<const double> x) {
    if (!mesh.spec.contains(x, 1e-8))
        fail(ErrorCode::DomainError, "lp_point_constant probe point lies outside the section");
    Mesh work = mesh;
    if (!work.deduped) {
        work.distinct_count = dedup_points(work.points, work.dim());
        work.deduped = true;
    }
    const RestrictedBasis rb = restrict_to_mesh(work, basis);
    std::vector<size_t> start = greedy_rows(rb.mesh_values, rb.rank());

    Eigen::MatrixXd vrow = rb.evaluate(x, 1);
    Eigen::VectorXd v = vrow.row(0).transpose();

    NormingLP lp(rb.mesh_values, start);
    const double plus = lp.solve(v);
    const double minus = lp.solve(-v);
    const double value = std::max(plus, minus);

    // Lagrange-type lower bound: the normalized reproducing kernel at x is a
    // feasible polynomial.
    Eigen::VectorXd kern = rb.mesh_values * v;
    const double denom = kern.cwiseAbs().maxCoeff();
    if (denom > 0.0) {
        const double lower = v.squaredNorm() / denom;
        if (value < lower - 1e-7)
            fail(ErrorCode::InternalError, "norming LP value fell below its kernel lower bound");
    }
    return value;
}

LPCertification certify_mesh_constant(const Mesh& mesh, const TotalDegreeBasis& basis, double probe_m) {
    if (!(probe_m >= 4.0 * mesh.m - 1e-12))
        fail(ErrorCode::InvalidArgument, "certify_mesh_constant requires probe_m >= 4 m");
    Mesh work = mesh;
    if (!work.deduped) {
        work.distinct_count = dedup_points(work.points, work.dim());
        work.deduped = true;
    }
    const RestrictedBasis rb = restrict_to_mesh(work, basis);
    const std::vector<size_t> start = greedy_rows(rb.mesh_values, rb.rank());

    const Mesh probe = build_mesh(mesh.spec, mesh.n, probe_m, mesh.family, true);
    const double tol = 1e-10 * std::max(bbox_diagonal(work.points, work.dim()), 1e-300);
    const std::vector<double> pts = filter_probe_points(work, probe, tol);
    const int dim = mesh.dim();
    const size_t npts = pts.size() / static_cast<size_t>(dim);
    if (npts == 0) fail(ErrorCode::InvalidArgument, "probe mesh adds no points beyond the mesh");

    // Fixed blocks keep the sweep deterministic for any worker count: each
    // block runs one warm-started LP chain.
    const size_t block_size = 4096;
    const size_t nblocks = (npts + block_size - 1) / block_size;
    std::vector<double> block_max(nblocks, 0.0);

    parallel_blocks(nblocks, [&](size_t b) {
        const size_t lo = b * block_size;
        const size_t hi = std::min(npts, lo + block_size);
        Eigen::MatrixXd V = rb.evaluate(
            std::span<const double>(pts.data() + lo * static_cast<size_t>(dim), (hi - lo) * static_cast<size_t>(dim)),
            hi - lo);
        NormingLP lp(rb.mesh_values, start);
        double best = 0.0;
        Eigen::VectorXd v(rb.rank());
        for (size_t i = 0; i < hi - lo; ++i) {
            v = V.row(static_cast<Eigen::Index>(i)).transpose();
            if (auto val = lp.solve_above(v, best)) best = std::max(best, *val);
        }
        block_max[b] = best;
    });

    LPCertification out;
    out.probe_count = static_cast<long long>(npts);
    for (double v : block_max) out.constant = std::max(out.constant, v);
    return out;
}

UnivariateReport univariate_inequality_suite(UnivariateKind kind, int n, double m, std::optional<double> omega) {
    if (n < 1 || n > 12) fail(ErrorCode::InvalidArgument, "univariate suite covers n in 1..12");
    if (!(m > 1.0)) fail(ErrorCode::InvalidFactor, "oversampling factor m must exceed 1");

    Section spec;
    const MeshConstants mc = mesh_constants(n, m);
    UnivariateReport rep;
    rep.kind = kind;
    rep.n = n;
    rep.m = m;
    switch (kind) {
        case UnivariateKind::Algebraic:
            spec = make_section("interval", {});
            rep.bound = mc.alpha;
            break;
        case UnivariateKind::Periodic:
            spec = make_section("circle", {});
            rep.bound = mc.alpha;
            break;
        case UnivariateKind::Subperiodic: {
            if (!omega) fail(ErrorCode::InvalidArgument, "subperiodic suite needs omega");
            rep.omega = omega;
            spec = make_section("circle_arc", {{"omega", *omega}});
            rep.bound = mc.beta;
            break;
        }
    }
    const Mesh mesh = build_mesh(spec, n, m, NodeFamily::Lobatto, false);
    TotalDegreeBasis basis(spec, n);
    const LPCertification lp = certify_mesh_constant(mesh, basis, 4.0 * m);
    rep.certified = lp.constant;
    rep.probe_count = lp.probe_count;
    rep.gap = rep.bound - rep.certified;
    rep.pass = rep.certified <= rep.bound;
    return rep;
}

}  // namespace normesh
