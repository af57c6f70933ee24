#include "simplex.hpp"

#include <cmath>
#include <limits>

namespace normesh {

NormingLP::NormingLP(const Eigen::MatrixXd& Q, std::vector<size_t> start_rows)
    : Q_(Q), m_(Q.rows()), n_(Q.cols()) {
    if (static_cast<Eigen::Index>(start_rows.size()) != n_)
        fail(ErrorCode::InvalidArgument, "norming LP needs exactly one start row per basis column");
    start_rows_ = std::move(start_rows);
    z_.resize(n_);
    work_col_.resize(n_);
    pi_.resize(n_);
    urow_.resize(n_);
    alpha_.resize(m_);
    beta_.resize(m_);
    // fixed right-hand-side perturbation: breaks the massive degeneracy of
    // corner probe points (the classic cycling case) at a value error far
    // below every certification margin
    perturb_.resize(n_);
    unsigned long long state = 0x9e3779b97f4a7c15ull;
    for (Eigen::Index i = 0; i < n_; ++i) {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        perturb_(i) = 0.5 + static_cast<double>(state % 1000003ull) / 1000003.0;
    }
    reset_basis();
}

void NormingLP::reset_basis() {
    basis_rows_.clear();
    for (size_t r : start_rows_) basis_rows_.push_back(static_cast<Eigen::Index>(r));
    basis_sign_.assign(start_rows_.size(), 1.0);
    warm_ = false;
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(n_);
    refactor(zero);
}

void NormingLP::refactor(const Eigen::VectorXd& v) {
    Eigen::MatrixXd B(n_, n_);
    for (Eigen::Index j = 0; j < n_; ++j)
        B.col(j) = basis_sign_[static_cast<size_t>(j)] * Q_.row(basis_rows_[static_cast<size_t>(j)]).transpose();
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
    binv_ = lu.inverse();
    if (!binv_.allFinite()) fail(ErrorCode::NumericalError, "singular basis in norming LP");
    z_.noalias() = binv_ * v;
    since_refactor_ = 0;
}

void NormingLP::pivot(Eigen::Index row, Eigen::Index enter_row, double enter_sign, const Eigen::VectorXd& v) {
    if (row < 0 || enter_row < 0) fail(ErrorCode::NumericalError, "norming LP pivot selection failed");
    work_col_.noalias() = binv_ * (enter_sign * Q_.row(enter_row).transpose());
    const double piv = work_col_(row);
    if (std::abs(piv) < kPivotTol) fail(ErrorCode::NumericalError, "vanishing pivot in norming LP");
    const double t = z_(row) / piv;
    z_.noalias() -= t * work_col_;
    z_(row) = t;
    binv_.row(row) /= piv;
    for (Eigen::Index i = 0; i < n_; ++i) {
        if (i == row) continue;
        const double w = work_col_(i);
        if (w != 0.0) binv_.row(i).noalias() -= w * binv_.row(row);
    }
    basis_rows_[static_cast<size_t>(row)] = enter_row;
    basis_sign_[static_cast<size_t>(row)] = enter_sign;
    ++pivots_;
    // refactoring is cheap next to pricing; keep the inverse fresh
    if (++since_refactor_ >= 16 || std::abs(piv) < 1e-7) refactor(v);
}

double NormingLP::dual_violation() {
    pi_ = binv_.colwise().sum().transpose();
    beta_.noalias() = Q_ * pi_;
    return beta_.cwiseAbs().maxCoeff() - 1.0;
}

void NormingLP::primal_optimize(const Eigen::VectorXd& v) {
    const long long bland_after = 500 + 20 * n_;
    const long long hard_limit = 100000;
    for (long long iter = 0;; ++iter) {
        if (iter > hard_limit) fail(ErrorCode::NumericalError, "norming LP iteration limit exceeded");
        const bool bland = iter > bland_after;
        pi_ = binv_.colwise().sum().transpose();  // B^-T * ones
        beta_.noalias() = Q_ * pi_;

        // entering column: reduced cost 1 - |beta_p| most negative
        Eigen::Index enter = -1;
        double enter_sign = 1.0;
        if (!bland) {
            double best = 1.0 + kCostTol;
            for (Eigen::Index p = 0; p < m_; ++p) {
                const double a = std::abs(beta_(p));
                if (a > best) {
                    best = a;
                    enter = p;
                }
            }
            if (enter >= 0) enter_sign = beta_(enter) > 0 ? 1.0 : -1.0;
        } else {
            for (Eigen::Index p = 0; p < m_ && enter < 0; ++p)
                if (beta_(p) > 1.0 + kCostTol) {
                    enter = p;
                    enter_sign = 1.0;
                }
            for (Eigen::Index p = 0; p < m_ && enter < 0; ++p)
                if (-beta_(p) > 1.0 + kCostTol) {
                    enter = p;
                    enter_sign = -1.0;
                }
        }
        if (enter < 0) return;  // optimal

        work_col_.noalias() = binv_ * (enter_sign * Q_.row(enter).transpose());
        const double wtol = 1e-11 * std::max(1.0, work_col_.cwiseAbs().maxCoeff());
        double theta = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < n_; ++i)
            if (work_col_(i) > wtol) theta = std::min(theta, std::max(z_(i), 0.0) / work_col_(i));
        if (!std::isfinite(theta))
            fail(ErrorCode::InternalError, "norming LP is unbounded; the mesh cannot be determining");

        // among (near-)minimal ratios take the largest pivot, then the lowest
        // variable index
        const double cutoff = theta * (1.0 + 1e-12) + 1e-14;
        Eigen::Index leave = -1;
        double best_piv = 0.0;
        long long best_var = 0;
        for (Eigen::Index i = 0; i < n_; ++i) {
            const double w = work_col_(i);
            if (w <= wtol) continue;
            const double ratio = std::max(z_(i), 0.0) / w;
            if (ratio > cutoff) continue;
            const long long var =
                basis_rows_[static_cast<size_t>(i)] + (basis_sign_[static_cast<size_t>(i)] < 0 ? m_ : 0);
            const bool better = bland ? (leave < 0 || var < best_var)
                                      : (leave < 0 || w > best_piv * (1.0 + 1e-12) ||
                                         (w > best_piv * (1.0 - 1e-12) && var < best_var));
            if (better) {
                leave = i;
                best_piv = w;
                best_var = var;
            }
        }
        pivot(leave, enter, enter_sign, v);
    }
}

void NormingLP::dual_restore(const Eigen::VectorXd& v) {
    const long long bland_after = 500 + 20 * n_;
    const long long hard_limit = 100000;
    for (long long iter = 0;; ++iter) {
        if (iter > hard_limit) fail(ErrorCode::NumericalError, "norming LP iteration limit exceeded");
        const bool bland = iter > bland_after;

        Eigen::Index row = -1;
        if (!bland) {
            double worst = -kFeasTol;
            for (Eigen::Index i = 0; i < n_; ++i)
                if (z_(i) < worst) {
                    worst = z_(i);
                    row = i;
                }
        } else {
            long long best_var = 0;
            for (Eigen::Index i = 0; i < n_; ++i) {
                if (z_(i) >= -kFeasTol) continue;
                const long long var =
                    basis_rows_[static_cast<size_t>(i)] + (basis_sign_[static_cast<size_t>(i)] < 0 ? m_ : 0);
                if (row < 0 || var < best_var) {
                    row = i;
                    best_var = var;
                }
            }
        }
        if (row < 0) return;  // primal feasible, hence optimal

        urow_ = binv_.row(row).transpose();
        alpha_.noalias() = Q_ * urow_;
        pi_ = binv_.colwise().sum().transpose();
        beta_.noalias() = Q_ * pi_;

        const double wtol = 1e-11 * std::max(1.0, alpha_.cwiseAbs().maxCoeff());
        double theta = std::numeric_limits<double>::infinity();
        for (Eigen::Index p = 0; p < m_; ++p) {
            const double a = alpha_(p);
            if (a < -wtol) theta = std::min(theta, std::max(1.0 - beta_(p), 0.0) / (-a));
            if (a > wtol) theta = std::min(theta, std::max(1.0 + beta_(p), 0.0) / a);
        }
        if (!std::isfinite(theta))
            fail(ErrorCode::DeterminingSetViolation, "norming LP infeasible: probe value not reachable from the mesh");

        const double cutoff = theta * (1.0 + 1e-12) + 1e-14;
        Eigen::Index enter = -1;
        double enter_sign = 1.0;
        double best_piv = 0.0;
        long long best_var = 0;
        auto consider = [&](Eigen::Index p, double sign, double w, double d) {
            if (w >= -wtol) return;  // entering needs w < 0
            const double ratio = std::max(d, 0.0) / (-w);
            if (ratio > cutoff) return;
            const long long var = p + (sign < 0 ? m_ : 0);
            const bool better = bland ? (enter < 0 || var < best_var)
                                      : (enter < 0 || -w > best_piv * (1.0 + 1e-12) ||
                                         (-w > best_piv * (1.0 - 1e-12) && var < best_var));
            if (better) {
                enter = p;
                enter_sign = sign;
                best_piv = -w;
                best_var = var;
            }
        };
        for (Eigen::Index p = 0; p < m_; ++p) {
            consider(p, 1.0, alpha_(p), 1.0 - beta_(p));
            consider(p, -1.0, -alpha_(p), 1.0 + beta_(p));
        }
        pivot(row, enter, enter_sign, v);
    }
}

double NormingLP::optimize_current(const Eigen::VectorXd& v) {
    for (int attempt = 0;; ++attempt) {
        try {
            if (!warm_) {
                // flip column signs to make the start basis primal feasible
                for (Eigen::Index i = 0; i < n_; ++i) {
                    if (z_(i) < 0.0) {
                        basis_sign_[static_cast<size_t>(i)] = -basis_sign_[static_cast<size_t>(i)];
                        binv_.row(i) = -binv_.row(i);
                        z_(i) = -z_(i);
                    }
                }
                primal_optimize(v);
                warm_ = true;
            } else {
                dual_restore(v);
            }
            // optimality certificate: the simplex multipliers are the optimal
            // polynomial and must satisfy the mesh constraints
            if (dual_violation() <= 1e-7 && z_.minCoeff() >= -1e-8) return z_.sum();
            if (attempt >= 2) fail(ErrorCode::NumericalError, "norming LP lost dual feasibility");
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NumericalError || attempt >= 2) throw;
        }
        ++resets_;
        reset_basis();
        z_.noalias() = binv_ * v;
    }
}

double NormingLP::solve(const Eigen::VectorXd& v) {
    if (v.size() != n_) fail(ErrorCode::InvalidArgument, "norming LP objective size mismatch");
    rhs_ = v + (1e-12 * (1.0 + v.cwiseAbs().maxCoeff())) * perturb_;
    z_.noalias() = binv_ * rhs_;
    return optimize_current(rhs_);
}

std::optional<double> NormingLP::solve_above(const Eigen::VectorXd& v, double best) {
    if (v.size() != n_) fail(ErrorCode::InvalidArgument, "norming LP objective size mismatch");
    rhs_ = v + (1e-12 * (1.0 + v.cwiseAbs().maxCoeff())) * perturb_;
    z_.noalias() = binv_ * rhs_;
    if (warm_) {
        // any basic solution of the dual is a feasible weight vector, so its
        // l1 norm certifies an upper bound on this point's constant
        const double upper = z_.cwiseAbs().sum();
        if (upper <= best) return std::nullopt;
    }
    return optimize_current(rhs_);
}

}  // namespace normesh
