#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "mesh.hpp"

namespace normesh {

long long binomial(int n, int k);

struct Box {
    std::vector<double> lo, hi;
    int dim() const { return static_cast<int>(lo.size()); }
};

/// Enclosing box of a section, padded so that every point of K (and of any
/// probe mesh on K) scales into [-1, 1] per coordinate.
Box section_bounding_box(const Section& spec);

/// Product-Chebyshev basis of the total-degree space P_n^d on a bounding
/// box, with multi-indices in graded-lexicographic order.
class TotalDegreeBasis {
  public:
    TotalDegreeBasis(int dim, int degree, Box box);
    TotalDegreeBasis(const Section& spec, int degree) : TotalDegreeBasis(spec.ambient_dim(), degree, section_bounding_box(spec)) {}

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    const Box& box() const { return box_; }
    size_t size() const { return indices_.size(); }  // C(n + d, d)
    const std::vector<std::vector<int>>& multi_indices() const { return indices_; }

    void evaluate(const double* point, double* out) const;
    Eigen::MatrixXd vandermonde(std::span<const double> points, size_t npoints) const;

  private:
    int dim_;
    int degree_;
    Box box_;
    std::vector<std::vector<int>> indices_;
};

/// Mesh-orthonormal basis of the restricted space P_n(K): the column space
/// of the mesh Vandermonde, identified by a rank-revealing SVD with
/// threshold rows * eps * sigma_max.
struct RestrictedBasis {
    TotalDegreeBasis basis;
    Eigen::MatrixXd transform;    // K x r; q(x) = phi(x)^T transform
    Eigen::MatrixXd mesh_values;  // M x r with orthonormal columns
    double sigma_max = 0.0;
    double threshold = 0.0;
    double orth_residual = 0.0;  // || (V W)^T (V W) - I ||_max

    int rank() const { return static_cast<int>(transform.cols()); }
    Eigen::MatrixXd evaluate(std::span<const double> points, size_t npoints) const;
};

RestrictedBasis restrict_to_mesh(const Mesh& mesh, const TotalDegreeBasis& basis);
RestrictedBasis restrict_to_mesh(const Mesh& mesh);  // basis at degree mesh.n

struct DimensionInfo {
    long long ambient_count = 0;               // C(n + d, d)
    std::optional<long long> variety_count;    // C(n+d,d) - C(n-k+d,d) for degree-k varieties, n >= k
    long long numeric_rank = 0;
    double lambda = 0.0;                       // N ~ gamma * n^lambda metadata
    double gamma = 0.0;
    std::optional<long long> torus_text_count; // the 2n^2 value quoted for the torus
    bool torus_count_discrepancy = false;
    double sigma_max = 0.0;
    double threshold = 0.0;
    long long probe_points = 0;
    double probe_m = 0.0;
};

DimensionInfo numeric_dimension(const Section& spec, int n, double probe_m);

struct FeketeResult {
    std::vector<size_t> indices;   // positions in the source mesh
    std::vector<double> points;    // row-major
    int dim = 0;
    double lebesgue_estimate = 0.0;
    double probe_m = 0.0;
    long long probe_points = 0;
};

FeketeResult approx_fekete(const Mesh& mesh, const TotalDegreeBasis& basis, double probe_m = 8.0);

/// Greedy volume-maximizing row selection (pivoted Gram-Schmidt on rows of
/// an orthonormal-column matrix). Ties break at the lowest row index.
std::vector<size_t> greedy_rows(const Eigen::MatrixXd& U, int count);

struct LSFit {
    Eigen::VectorXd coefficients;       // in the mesh-orthonormal basis
    double residual_mesh = 0.0;         // sup |fit - samples| over the mesh
    double operator_norm_estimate = 0.0;
    double operator_norm_bound = 0.0;   // c * sqrt(card)
    bool bound_ok = false;
    bool conditioning_warning = false;
    double orth_residual = 0.0;
    double probe_m = 0.0;
};

LSFit ls_projection(const Mesh& mesh, const TotalDegreeBasis& basis, std::span<const double> samples,
                    double probe_m = 4.0);

/// max over probe points x of sum_i |K(x, a_i)|, K the reproducing kernel of
/// the mesh-orthonormal basis; a certified lower bound of ||L|| restricted
/// to the probe set.
double ls_operator_norm(const RestrictedBasis& rb, std::span<const double> probe_points, size_t nprobe);

}  // namespace normesh
