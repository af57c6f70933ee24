#include "polyspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace normesh {

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long out = 1;
    for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

Box section_bounding_box(const Section& spec) {
    Box box;
    const int d = spec.ambient_dim();
    box.lo.resize(static_cast<size_t>(d));
    box.hi.resize(static_cast<size_t>(d));
    spec.component_bounds(box.lo.data(), box.hi.data());
    for (int i = 0; i < d; ++i) {
        double& lo = box.lo[static_cast<size_t>(i)];
        double& hi = box.hi[static_cast<size_t>(i)];
        const double pad = 1e-9 * (1.0 + std::abs(lo) + std::abs(hi));
        lo -= pad;
        hi += pad;
        const double width_floor = 1e-8 * (1.0 + std::abs(lo) + std::abs(hi));
        if (hi - lo < width_floor) {
            const double c = 0.5 * (lo + hi);
            lo = c - 0.5 * width_floor;
            hi = c + 0.5 * width_floor;
        }
    }
    return box;
}

namespace {

void gen_indices(int dim, int degree, std::vector<int>& current, int pos, int remaining,
                 std::vector<std::vector<int>>& out) {
    if (pos == dim - 1) {
        current[static_cast<size_t>(pos)] = remaining;
        out.push_back(current);
        return;
    }
    for (int e = remaining; e >= 0; --e) {
        current[static_cast<size_t>(pos)] = e;
        gen_indices(dim, degree, current, pos + 1, remaining - e, out);
    }
}

}  // namespace

TotalDegreeBasis::TotalDegreeBasis(int dim, int degree, Box box) : dim_(dim), degree_(degree), box_(std::move(box)) {
    if (dim < 1 || dim > 3) fail(ErrorCode::InvalidArgument, "basis dimension must be 1, 2 or 3");
    if (degree < 0) fail(ErrorCode::InvalidArgument, "basis degree must be >= 0");
    if (box_.dim() != dim) fail(ErrorCode::InvalidArgument, "bounding box dimension mismatch");
    std::vector<int> current(static_cast<size_t>(dim), 0);
    for (int g = 0; g <= degree; ++g) gen_indices(dim, degree, current, 0, g, indices_);
}

void TotalDegreeBasis::evaluate(const double* point, double* out) const {
    double cheb[3][64];
    for (int d = 0; d < dim_; ++d) {
        const double lo = box_.lo[static_cast<size_t>(d)], hi = box_.hi[static_cast<size_t>(d)];
        double s = (2.0 * point[d] - (lo + hi)) / (hi - lo);
        if (s < -1.0 - 1e-9 || s > 1.0 + 1e-9)
            fail(ErrorCode::ScalingError, "point lies outside the basis bounding box");
        s = std::clamp(s, -1.0, 1.0);
        cheb[d][0] = 1.0;
        if (degree_ >= 1) cheb[d][1] = s;
        for (int k = 2; k <= degree_; ++k) cheb[d][k] = 2.0 * s * cheb[d][k - 1] - cheb[d][k - 2];
    }
    for (size_t j = 0; j < indices_.size(); ++j) {
        double v = 1.0;
        for (int d = 0; d < dim_; ++d) v *= cheb[d][indices_[j][static_cast<size_t>(d)]];
        out[j] = v;
    }
}

Eigen::MatrixXd TotalDegreeBasis::vandermonde(std::span<const double> points, size_t npoints) const {
    if (npoints == 0) fail(ErrorCode::InvalidArgument, "vandermonde requires a nonempty point set");
    if (degree_ > 63) fail(ErrorCode::InvalidArgument, "basis degree too large");
    Eigen::MatrixXd V(static_cast<Eigen::Index>(npoints), static_cast<Eigen::Index>(size()));
    std::vector<double> row(size());
    for (size_t i = 0; i < npoints; ++i) {
        evaluate(points.data() + i * static_cast<size_t>(dim_), row.data());
        for (size_t j = 0; j < row.size(); ++j) V(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
    }
    return V;
}

RestrictedBasis restrict_to_mesh(const Mesh& mesh, const TotalDegreeBasis& basis) {
    const size_t count = mesh.count();
    if (count == 0) fail(ErrorCode::InvalidArgument, "mesh has no points");
    Eigen::MatrixXd V = basis.vandermonde(mesh.points, count);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(V, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
    const double threshold = static_cast<double>(count) * std::numeric_limits<double>::epsilon() * sigma_max;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > threshold) ++rank;
    if (rank == 0) fail(ErrorCode::NumericalError, "mesh Vandermonde has numerical rank zero");

    RestrictedBasis rb{basis, {}, {}, sigma_max, threshold, 0.0};
    rb.mesh_values = svd.matrixU().leftCols(rank);
    rb.transform = svd.matrixV().leftCols(rank) * sv.head(rank).cwiseInverse().asDiagonal();
    rb.orth_residual =
        (rb.mesh_values.transpose() * rb.mesh_values - Eigen::MatrixXd::Identity(rank, rank)).cwiseAbs().maxCoeff();
    return rb;
}

RestrictedBasis restrict_to_mesh(const Mesh& mesh) {
    TotalDegreeBasis basis(mesh.spec, mesh.n);
    return restrict_to_mesh(mesh, basis);
}

Eigen::MatrixXd RestrictedBasis::evaluate(std::span<const double> points, size_t npoints) const {
    Eigen::MatrixXd V = basis.vandermonde(points, npoints);
    return V * transform;
}

namespace {

struct VarietyMeta {
    int k = 0;          // defining polynomial degree, 0 when full-dimensional
    double lambda = 0;  // N ~ gamma n^lambda
    double gamma = 0;
};

VarietyMeta variety_meta(const Section& spec) {
    const int d = spec.ambient_dim();
    const int k = spec.variety_degree();
    if (k > 0) {
        // dim P_n on a degree-k hypersurface grows like k/(d-1)! * n^(d-1)
        double fact = 1.0;
        for (int i = 2; i <= d - 1; ++i) fact *= i;
        return {k, static_cast<double>(d - 1), static_cast<double>(k) / fact};
    }
    double fact = 1.0;
    for (int i = 2; i <= d; ++i) fact *= i;
    return {0, static_cast<double>(d), 1.0 / fact};
}

/// Singular values of a tall matrix assembled block-by-block: repeated QR of
/// [R; block] keeps only a K x K triangle in memory.
Eigen::VectorXd streamed_singular_values(const TotalDegreeBasis& basis, const Mesh& probe) {
    const size_t count = probe.count();
    const size_t K = basis.size();
    const size_t block = std::max<size_t>(1024, 4 * K);
    Eigen::MatrixXd R(0, static_cast<Eigen::Index>(K));
    std::vector<double> row(K);
    size_t done = 0;
    while (done < count) {
        const size_t take = std::min(block, count - done);
        Eigen::MatrixXd stacked(R.rows() + static_cast<Eigen::Index>(take), static_cast<Eigen::Index>(K));
        if (R.rows() > 0) stacked.topRows(R.rows()) = R;
        for (size_t i = 0; i < take; ++i) {
            basis.evaluate(probe.point(done + i), row.data());
            for (size_t j = 0; j < K; ++j)
                stacked(R.rows() + static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
        }
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(stacked);
        const Eigen::Index keep = std::min<Eigen::Index>(stacked.rows(), static_cast<Eigen::Index>(K));
        R = qr.matrixQR().topRows(keep).triangularView<Eigen::Upper>();
        done += take;
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(R);
    return svd.singularValues();
}

}  // namespace

DimensionInfo numeric_dimension(const Section& spec, int n, double probe_m) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "numeric_dimension requires n >= 1");
    if (!(probe_m > 1.0)) fail(ErrorCode::InvalidFactor, "probe_m must exceed 1");
    const Mesh probe = build_mesh(spec, n, probe_m, NodeFamily::Lobatto, true);
    TotalDegreeBasis basis(spec, n);

    DimensionInfo info;
    info.ambient_count = binomial(n + spec.ambient_dim(), spec.ambient_dim());
    info.probe_points = static_cast<long long>(probe.count());
    info.probe_m = probe_m;

    const VarietyMeta meta = variety_meta(spec);
    info.lambda = meta.lambda;
    info.gamma = meta.gamma;
    if (meta.k > 0 && n >= meta.k) {
        const int d = spec.ambient_dim();
        info.variety_count = binomial(n + d, d) - binomial(n - meta.k + d, d);
    }
    if (meta.k == 4) {
        info.torus_text_count = 2LL * n * n;
        info.torus_count_discrepancy = info.variety_count && *info.variety_count != *info.torus_text_count;
    }

    Eigen::VectorXd sv = streamed_singular_values(basis, probe);
    if (!sv.allFinite()) fail(ErrorCode::NumericalError, "rank computation produced non-finite singular values");
    info.sigma_max = sv.size() > 0 ? sv(0) : 0.0;
    info.threshold = static_cast<double>(probe.count()) * std::numeric_limits<double>::epsilon() * info.sigma_max;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > info.threshold) ++info.numeric_rank;
    return info;
}

std::vector<size_t> greedy_rows(const Eigen::MatrixXd& U, int count) {
    const Eigen::Index m = U.rows();
    Eigen::MatrixXd R = U;
    Eigen::VectorXd norms = R.rowwise().squaredNorm();
    std::vector<size_t> picked;
    picked.reserve(static_cast<size_t>(count));
    for (int step = 0; step < count; ++step) {
        Eigen::Index best = -1;
        double best_norm = 1e-28;
        for (Eigen::Index i = 0; i < m; ++i)
            if (norms(i) > best_norm) {
                best_norm = norms(i);
                best = i;
            }
        if (best < 0) fail(ErrorCode::ExtractionFailure, "rank-deficient selection during Fekete extraction");
        picked.push_back(static_cast<size_t>(best));
        Eigen::VectorXd v = R.row(best).transpose() / std::sqrt(best_norm);
        R -= (R * v) * v.transpose();
        norms = R.rowwise().squaredNorm();
        norms(best) = 0.0;
        for (size_t p : picked) norms(static_cast<Eigen::Index>(p)) = 0.0;
    }
    return picked;
}

FeketeResult approx_fekete(const Mesh& mesh, const TotalDegreeBasis& basis, double probe_m) {
    Mesh work = mesh;
    if (!work.deduped) work.distinct_count = dedup_points(work.points, work.dim());
    const RestrictedBasis rb = restrict_to_mesh(work, basis);
    const int r = rb.rank();
    std::vector<size_t> rows = greedy_rows(rb.mesh_values, r);

    FeketeResult out;
    out.dim = work.dim();
    out.indices = rows;
    out.points.reserve(rows.size() * static_cast<size_t>(out.dim));
    for (size_t i : rows) {
        const double* p = work.point(i);
        out.points.insert(out.points.end(), p, p + out.dim);
    }

    // Interpolation matrix on the selected points, then the Lebesgue function
    // max over a finer probe mesh.
    Eigen::MatrixXd A(r, r);
    for (int i = 0; i < r; ++i) A.row(i) = rb.mesh_values.row(static_cast<Eigen::Index>(rows[static_cast<size_t>(i)]));
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A.transpose());
    if (std::abs(lu.determinant()) < 1e-300) fail(ErrorCode::ExtractionFailure, "singular Fekete interpolation matrix");

    const Mesh probe = build_mesh(work.spec, work.n, probe_m, NodeFamily::Lobatto, true);
    out.probe_m = probe_m;
    out.probe_points = static_cast<long long>(probe.count());
    double leb = 0.0;
    const size_t chunk = 2048;
    for (size_t start = 0; start < probe.count(); start += chunk) {
        const size_t take = std::min(chunk, probe.count() - start);
        Eigen::MatrixXd Q = rb.evaluate(
            std::span<const double>(probe.points.data() + start * static_cast<size_t>(out.dim),
                                    take * static_cast<size_t>(out.dim)),
            take);
        Eigen::MatrixXd L = lu.solve(Q.transpose());  // r x take of cardinal values
        leb = std::max(leb, L.cwiseAbs().colwise().sum().maxCoeff());
    }
    out.lebesgue_estimate = leb;
    return out;
}

double ls_operator_norm(const RestrictedBasis& rb, std::span<const double> probe_points, size_t nprobe) {
    if (nprobe == 0) fail(ErrorCode::InvalidArgument, "operator norm needs a nonempty probe set");
    const int d = rb.basis.dim();
    double best = 0.0;
    const size_t chunk = 2048;
    for (size_t start = 0; start < nprobe; start += chunk) {
        const size_t take = std::min(chunk, nprobe - start);
        Eigen::MatrixXd Qp = rb.evaluate(
            std::span<const double>(probe_points.data() + start * static_cast<size_t>(d), take * static_cast<size_t>(d)),
            take);
        // kernel row sums: sum_i |q(x)^T q(a_i)|
        Eigen::MatrixXd K = Qp * rb.mesh_values.transpose();
        best = std::max(best, K.cwiseAbs().rowwise().sum().maxCoeff());
    }
    return best;
}

LSFit ls_projection(const Mesh& mesh, const TotalDegreeBasis& basis, std::span<const double> samples, double probe_m) {
    const size_t count = mesh.count();
    if (samples.size() != count) fail(ErrorCode::InvalidArgument, "sample count must match mesh point count");
    for (double s : samples)
        if (!std::isfinite(s)) fail(ErrorCode::InvalidArgument, "samples must be finite");
    const RestrictedBasis rb = restrict_to_mesh(mesh, basis);

    Eigen::Map<const Eigen::VectorXd> f(samples.data(), static_cast<Eigen::Index>(samples.size()));
    LSFit fit;
    fit.coefficients = rb.mesh_values.transpose() * f;
    Eigen::VectorXd fitted = rb.mesh_values * fit.coefficients;
    fit.residual_mesh = (fitted - f).cwiseAbs().maxCoeff();
    fit.orth_residual = rb.orth_residual;
    fit.conditioning_warning = rb.orth_residual > 1e-8;

    const Mesh probe = build_mesh(mesh.spec, mesh.n, probe_m, NodeFamily::Lobatto, true);
    fit.probe_m = probe_m;
    fit.operator_norm_estimate = ls_operator_norm(rb, probe.points, probe.count());
    fit.operator_norm_bound = mesh.c * std::sqrt(static_cast<double>(count));
    fit.bound_ok = fit.operator_norm_estimate <= fit.operator_norm_bound + 1e-9;
    return fit;
}

}  // namespace normesh
