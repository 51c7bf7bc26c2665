#pragma once

// Small dense overdetermined linear solves for matching constants.

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "emforms/errors.hpp"
#include "emforms/form.hpp"

namespace emforms {

struct LeastSquaresResult {
    Eigen::VectorXd x;
    Eigen::Index rank = 0;
    /// ‖A x − b‖ / max(‖b‖, ‖A x‖) on the column-equilibrated system.
    double relative_residual = 0.0;
    Eigen::Index rows_used = 0;
};

/// Solve min ‖A x − b‖ with column equilibration and a rank check. Rows whose
/// largest entry is below `drop_tol` times the largest row are dropped.
/// A rank-deficient system or a residual above `residual_tol` raises
/// MatchingError.
inline LeastSquaresResult solve_least_squares(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double residual_tol = 1e-9,
                                              const std::string& what = "matching", double drop_tol = 1e-12) {
    if (A.rows() != b.size()) throw MatchingError(what + ": row count mismatch");
    if (A.cols() == 0) throw MatchingError(what + ": no unknowns");

    Eigen::VectorXd col_scale(A.cols());
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
        const double n = A.col(j).norm();
        col_scale(j) = n > 0.0 ? 1.0 / n : 1.0;
    }
    const Eigen::MatrixXd Ac = A * col_scale.asDiagonal();
    std::vector<double> row_size(static_cast<std::size_t>(A.rows()));
    double largest = 0.0;
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        row_size[static_cast<std::size_t>(i)] = std::max(Ac.row(i).lpNorm<Eigen::Infinity>(), std::abs(b(i)));
        largest = std::max(largest, row_size[static_cast<std::size_t>(i)]);
    }
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        if (row_size[static_cast<std::size_t>(i)] > drop_tol * largest) keep.push_back(i);
    const auto m = static_cast<Eigen::Index>(keep.size());
    if (m < A.cols()) throw MatchingError(what + ": rank-deficient matching system (fewer informative equations than unknowns)");

    Eigen::MatrixXd As(m, A.cols());
    Eigen::VectorXd bs(m);
    for (Eigen::Index k = 0; k < m; ++k) {
        As.row(k) = Ac.row(keep[static_cast<std::size_t>(k)]);
        bs(k) = b(keep[static_cast<std::size_t>(k)]);
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(As);
    qr.setThreshold(1e-10);
    LeastSquaresResult out;
    out.rank = qr.rank();
    out.rows_used = m;
    if (out.rank < A.cols())
        throw MatchingError(what + ": rank-deficient matching system (rank " + std::to_string(out.rank) + " < " + std::to_string(A.cols()) + ")");
    const Eigen::VectorXd y = qr.solve(bs);
    const double denom = std::max({bs.norm(), (As * y).norm(), 1e-300});
    out.relative_residual = (As * y - bs).norm() / denom;
    if (!(out.relative_residual <= residual_tol))
        throw MatchingError(what + ": least-squares residual " + std::to_string(out.relative_residual) + " exceeds tolerance");
    out.x = y.cwiseProduct(col_scale);
    for (Eigen::Index j = 0; j < out.x.size(); ++j)
        if (!std::isfinite(out.x(j))) throw MatchingError(what + ": non-finite solution");
    return out;
}

/// One family of matching equations: a form that is affine in the unknowns
/// and must vanish at every sample event.
struct MatchingCondition {
    std::string name;
    std::function<DifferentialForm(std::span<const double>)> residual;
    const DiagonalMetric* metric = nullptr;
    std::vector<Event> samples;
};

struct LinearSystem {
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
};

/// Rows A x = b from the orthonormal components of each condition's
/// residual form. The affine map is probed at x = 0 and at the unit vectors.
/// Each condition block is divided by its own largest entry so that
/// conditions with very different physical scales weigh alike.
inline LinearSystem assemble_matching_system(std::span<const MatchingCondition> conditions, std::size_t unknowns) {
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    for (const auto& cond : conditions) {
        if (cond.metric == nullptr) throw MatchingError("matching condition '" + cond.name + "' has no metric");
        const std::vector<double> zero(unknowns, 0.0);
        const auto r0 = cond.residual(zero);
        std::vector<DifferentialForm> cols;
        for (std::size_t j = 0; j < unknowns; ++j) {
            std::vector<double> x(unknowns, 0.0);
            x[j] = 1.0;
            cols.push_back(cond.residual(x) - r0);
        }
        std::vector<std::vector<double>> block_rows;
        std::vector<double> block_rhs;
        double scale = 0.0;
        for (const auto& e : cond.samples) {
            const auto v0 = evaluate_orthonormal(r0, *cond.metric, e);
            std::vector<std::map<MultiIndex, double>> vj;
            for (const auto& c : cols) vj.push_back(evaluate_orthonormal(c, *cond.metric, e));
            for (const auto& [idx, val] : v0) {
                std::vector<double> row(unknowns);
                for (std::size_t j = 0; j < unknowns; ++j) {
                    row[j] = vj[j].at(idx);
                    scale = std::max(scale, std::abs(row[j]));
                }
                scale = std::max(scale, std::abs(val));
                block_rows.push_back(std::move(row));
                block_rhs.push_back(-val);
            }
        }
        if (!(scale > 0.0)) continue;
        for (std::size_t k = 0; k < block_rows.size(); ++k) {
            for (double& a : block_rows[k]) a /= scale;
            rows.push_back(std::move(block_rows[k]));
            rhs.push_back(block_rhs[k] / scale);
        }
    }
    LinearSystem sys;
    sys.A.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(unknowns));
    sys.b.resize(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < unknowns; ++j) sys.A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        sys.b(static_cast<Eigen::Index>(i)) = rhs[i];
    }
    return sys;
}

}  // namespace emforms
