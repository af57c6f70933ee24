#include "mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace normesh {

long long iceil_safe(double x) {
    const double r = std::round(x);
    if (std::abs(x - r) < 1e-9) return static_cast<long long>(r);
    return static_cast<long long>(std::ceil(x));
}

MeshConstants mesh_constants(int n, double m) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "mesh degree n must be >= 1");
    if (!(m > 1.0)) fail(ErrorCode::InvalidFactor, "oversampling factor m must exceed 1 (beta diverges at m -> 1)");
    MeshConstants out;
    out.alpha = 1.0 / std::cos(kPi / (2.0 * m));
    out.beta = m / (m - 1.0);
    out.N1 = iceil_safe(m * n + 1.0);
    out.N2 = iceil_safe(2.0 * m * n + 1.0);
    return out;
}

long long cardinality_bound(const Section& spec, int n, double m) {
    const MeshConstants mc = mesh_constants(n, m);
    return spec.signature().cardinality_bound(mc.N1, mc.N2);
}

double bbox_diagonal(const std::vector<double>& points, int dim) {
    if (points.empty()) return 0.0;
    std::vector<double> lo(static_cast<size_t>(dim), std::numeric_limits<double>::infinity());
    std::vector<double> hi(static_cast<size_t>(dim), -std::numeric_limits<double>::infinity());
    for (size_t i = 0; i < points.size(); i += static_cast<size_t>(dim))
        for (int k = 0; k < dim; ++k) {
            lo[static_cast<size_t>(k)] = std::min(lo[static_cast<size_t>(k)], points[i + static_cast<size_t>(k)]);
            hi[static_cast<size_t>(k)] = std::max(hi[static_cast<size_t>(k)], points[i + static_cast<size_t>(k)]);
        }
    double d2 = 0.0;
    for (int k = 0; k < dim; ++k) {
        const double w = hi[static_cast<size_t>(k)] - lo[static_cast<size_t>(k)];
        d2 += w * w;
    }
    return std::sqrt(d2);
}

namespace {

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

size_t find_root(std::vector<size_t>& parent, size_t i) {
    while (parent[i] != i) {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    return i;
}

}  // namespace

long long dedup_points(std::vector<double>& points, int dim, double tol_rel) {
    const size_t count = points.size() / static_cast<size_t>(dim);
    if (count == 0) return 0;
    const double tol = tol_rel * std::max(bbox_diagonal(points, dim), 1e-300);
    const double cell = 2.0 * tol;

    std::vector<size_t> parent(count);
    for (size_t i = 0; i < count; ++i) parent[i] = i;

    std::unordered_map<CellKey, std::vector<size_t>, CellHash> grid;
    grid.reserve(count * 2);
    auto key_of = [&](const double* p, long long ox, long long oy, long long oz) {
        CellKey k{{0, 0, 0}};
        const long long off[3] = {ox, oy, oz};
        for (int d = 0; d < dim; ++d) k.c[d] = static_cast<long long>(std::floor(p[d] / cell)) + off[d];
        return k;
    };

    for (size_t i = 0; i < count; ++i) {
        const double* p = points.data() + i * static_cast<size_t>(dim);
        // probe the home cell and all neighbors, then insert
        const long long span = 1;
        for (long long ox = -span; ox <= span; ++ox)
            for (long long oy = (dim > 1 ? -span : 0); oy <= (dim > 1 ? span : 0); ++oy)
                for (long long oz = (dim > 2 ? -span : 0); oz <= (dim > 2 ? span : 0); ++oz) {
                    auto it = grid.find(key_of(p, ox, oy, oz));
                    if (it == grid.end()) continue;
                    for (size_t j : it->second) {
                        const double* q = points.data() + j * static_cast<size_t>(dim);
                        double d2 = 0.0;
                        for (int d = 0; d < dim; ++d) d2 += (p[d] - q[d]) * (p[d] - q[d]);
                        if (d2 <= tol * tol) {
                            size_t ri = find_root(parent, i), rj = find_root(parent, j);
                            if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
                        }
                    }
                }
        grid[key_of(p, 0, 0, 0)].push_back(i);
    }

    std::vector<double> merged;
    merged.reserve(points.size());
    long long distinct = 0;
    for (size_t i = 0; i < count; ++i) {
        if (find_root(parent, i) != i) continue;
        const double* p = points.data() + i * static_cast<size_t>(dim);
        merged.insert(merged.end(), p, p + dim);
        ++distinct;
    }
    points = std::move(merged);
    return distinct;
}

Mesh build_mesh(const Section& spec, int n, double m, NodeFamily family, bool dedup) {
    if (family != NodeFamily::Lobatto && family != NodeFamily::ChebZeros)
        fail(ErrorCode::InvalidArgument, "node family must be Lobatto or ChebZeros");
    const MeshConstants mc = mesh_constants(n, m);
    const int nu = static_cast<int>(iceil_safe(m * n));

    Mesh mesh;
    mesh.spec = spec;
    mesh.n = n;
    mesh.m = m;
    mesh.family = family;
    mesh.c = spec.signature().constant(m);

    std::vector<std::vector<double>> factor_nodes;
    for (const auto& iv : spec.algebraic_ranges()) {
        auto ns = family == NodeFamily::Lobatto ? chebyshev_lobatto(nu, iv) : chebyshev_zeros(nu, iv);
        mesh.grid_shape.push_back(static_cast<long long>(ns.nodes.size()));
        factor_nodes.push_back(std::move(ns.nodes));
    }
    for (const auto& av : spec.angular_ranges()) {
        auto ns = subperiodic_angles(nu, av);
        mesh.grid_shape.push_back(static_cast<long long>(ns.nodes.size()));
        factor_nodes.push_back(std::move(ns.nodes));
    }

    long long raw = 1;
    for (long long s : mesh.grid_shape) raw *= s;
    mesh.raw_count = raw;

    const size_t nfac = factor_nodes.size();
    const int dim = spec.ambient_dim();
    mesh.points.resize(static_cast<size_t>(raw) * static_cast<size_t>(dim));

    std::vector<size_t> idx(nfac, 0);
    std::vector<double> coords(nfac);
    for (long long row = 0; row < raw; ++row) {
        for (size_t f = 0; f < nfac; ++f) coords[f] = factor_nodes[f][idx[f]];
        spec.map_unchecked(coords.data(), mesh.points.data() + static_cast<size_t>(row) * static_cast<size_t>(dim));
        // row-major odometer: last factor fastest
        for (size_t f = nfac; f-- > 0;) {
            if (++idx[f] < factor_nodes[f].size()) break;
            idx[f] = 0;
        }
    }

    mesh.distinct_count = raw;
    if (dedup) {
        mesh.distinct_count = dedup_points(mesh.points, dim);
        mesh.deduped = true;
    }
    return mesh;
}

}  // namespace normesh
