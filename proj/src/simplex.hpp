#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "errors.hpp"

namespace normesh {

/// Exact norming constant of a mesh at a point x:
///
///   maximize p(x) over the restricted space with |p(a_i)| <= 1 on the mesh,
///
/// written in a mesh-orthonormal basis with coefficients y as
///   maximize v^T y subject to -1 <= Q y <= 1, v = q(x),
/// and solved through its dual
///   minimize ||lambda||_1 subject to Q^T lambda = v
/// with a dense revised simplex over the +/- column splitting. Costs are
/// fixed, so an optimal basis stays dual-feasible when v changes; sweeping
/// probe points re-solves with a few dual pivots per point. Pricing uses the
/// most-negative rule; ratio tests take the largest pivot among near-tied
/// ratios and break remaining ties at the lowest column index, with Bland's
/// rule as the anti-cycling fallback. Every solve ends with an optimality
/// certificate (the simplex multipliers are the optimal polynomial and must
/// satisfy the mesh constraints); a failed certificate triggers one cold
/// restart.
class NormingLP {
  public:
    /// Q holds the orthonormal basis values on the mesh (one row per point);
    /// start_rows must select a nonsingular square submatrix.
    NormingLP(const Eigen::MatrixXd& Q, std::vector<size_t> start_rows);

    /// max{ |p(x)| : ||p||_mesh <= 1 } for v = q(x). Warm-starts from the
    /// previous optimal basis.
    double solve(const Eigen::VectorXd& v);

    /// Like solve, but skips the point (returning nullopt) when a certified
    /// upper bound already shows its value cannot exceed best. Used by probe
    /// sweeps that only need the maximum; the skip is exact.
    std::optional<double> solve_above(const Eigen::VectorXd& v, double best);

    long long pivot_count() const { return pivots_; }
    long long reset_count() const { return resets_; }

  private:
    const Eigen::MatrixXd& Q_;  // M x N
    Eigen::Index m_, n_;
    std::vector<size_t> start_rows_;
    std::vector<Eigen::Index> basis_rows_;
    std::vector<double> basis_sign_;
    Eigen::MatrixXd binv_;
    Eigen::VectorXd z_;
    Eigen::VectorXd work_col_, alpha_, beta_, pi_, urow_;
    long long pivots_ = 0;
    long long resets_ = 0;
    long long since_refactor_ = 0;
    bool warm_ = false;

    static constexpr double kFeasTol = 1e-11;
    static constexpr double kCostTol = 1e-11;
    static constexpr double kPivotTol = 1e-13;

    void reset_basis();
    double optimize_current(const Eigen::VectorXd& v);
    double dual_violation();
    void refactor(const Eigen::VectorXd& v);
    void pivot(Eigen::Index row, Eigen::Index enter_row, double enter_sign, const Eigen::VectorXd& v);
    void primal_optimize(const Eigen::VectorXd& v);
    void dual_restore(const Eigen::VectorXd& v);
};

}  // namespace normesh
