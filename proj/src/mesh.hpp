#pragma once

#include <vector>

#include "sections.hpp"

namespace normesh {

struct MeshConstants {
    double alpha;  // 1 / cos(pi / (2m))
    double beta;   // m / (m - 1)
    long long N1;  // ceil(m n + 1)
    long long N2;  // ceil(2 m n + 1)
};

MeshConstants mesh_constants(int n, double m);

/// Ceiling with a 1e-9 snap so that products like 2.5 * 4 stay integer.
long long iceil_safe(double x);

/// A norming mesh A_n = sigma(B_n): the tensor grid of Chebyshev-Lobatto (or
/// Chebyshev zeros) nodes on the algebraic ranges and subperiodic angular
/// nodes on the angular ranges, pushed through the section map.
struct Mesh {
    Section spec;
    int n = 0;
    double m = 0.0;
    NodeFamily family = NodeFamily::Lobatto;
    bool deduped = false;
    double c = 0.0;                      // alpha^(d1+d2) * beta^(d3)
    std::vector<long long> grid_shape;   // algebraic factors first, then angular
    std::vector<double> points;          // row-major, ambient_dim columns
    long long raw_count = 0;             // product of grid_shape
    long long distinct_count = 0;        // after dedup (equals point count)

    int dim() const { return spec.ambient_dim(); }
    size_t count() const { return points.size() / static_cast<size_t>(dim()); }
    const double* point(size_t i) const { return points.data() + i * static_cast<size_t>(dim()); }
};

Mesh build_mesh(const Section& spec, int n, double m, NodeFamily family = NodeFamily::Lobatto, bool dedup = false);

/// N1^d1 * N2^(d2+d3); equals the raw grid size whenever m*n is an integer.
long long cardinality_bound(const Section& spec, int n, double m);

/// Merge points closer than tol_rel * (bounding box diagonal). Returns the
/// number of distinct clusters; representatives keep first-occurrence order.
long long dedup_points(std::vector<double>& points, int dim, double tol_rel = 1e-10);

/// Diagonal of the axis-aligned bounding box of a point set.
double bbox_diagonal(const std::vector<double>& points, int dim);

}  // namespace normesh
