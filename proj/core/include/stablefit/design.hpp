#pragma once

// Closed-form design moments for least squares over a continuum of design
// points. When the regressor runs uniformly over [x0, x0 + d], the normal
// equations' averages (1/(K+1)) sum f(t_j) tend to (1/d) int f(t) dt, so the
// design matrix is known exactly and only the response moments depend on data.

#include <Eigen/Dense>

#include "stablefit/ecf.hpp"

namespace stablefit {

/// The regression interval [x0, x0 + d].
class IntervalDesign {
public:
    /// Throws DomainError unless x0 >= 0 and d > 0 (both finite). Log-t
    /// moments additionally need x0 > 0 and check it themselves.
    IntervalDesign(double x0, double d);

    [[nodiscard]] double x0() const noexcept { return x0_; }
    [[nodiscard]] double d() const noexcept { return d_; }
    [[nodiscard]] double upper() const noexcept { return x0_ + d_; }

private:
    double x0_;
    double d_;
};

enum class ModelKind { log_t, linear_t, polynomial };

inline constexpr int kMaxPolyDegree = 8;

struct DesignMoments {
    Eigen::MatrixXd matrix;
    /// Rounding residue of each entry (entry = matrix + residue to about 2^-106),
    /// or empty when unknown. Lets determinant() avoid the cancellation in
    /// x22 - x12^2 when x0 is large relative to d.
    Eigen::MatrixXd residue;
    ModelKind kind = ModelKind::log_t;
    int degree = 1;

    [[nodiscard]] double determinant() const;
    /// ||X||_1 ||X^-1||_1.
    [[nodiscard]] double condition_estimate() const;
    [[nodiscard]] bool is_positive_definite() const;
};

/// (1/d) int_{x0}^{x0+d} log^order(t) dt for order in {1, 2}.
///
/// Uses int log^m = t log^m t - m int log^(m-1), which gives
///   x12 = [(x0+d) log(x0+d) - x0 log x0 - d] / d
///   x22 = [(x0+d) log^2(x0+d) - x0 log^2 x0 - 2 d x12] / d.
/// Higher orders follow from the same recursion but are not needed here and
/// throw UnsupportedOrderError. Throws DomainError if x0 <= 0.
[[nodiscard]] double log_moment(const IntervalDesign& design, int order);

/// (1/d) int t^order dt = [(x0+d)^(order+1) - x0^(order+1)] / (d (order+1)).
[[nodiscard]] double power_moment(const IntervalDesign& design, int order);

/// [[1, x12], [x12, x22]].
[[nodiscard]] DesignMoments build_log_design(const IntervalDesign& design);

/// Hankel matrix of power moments, entry (i, j) = power_moment(i + j).
/// Throws ConditioningError for degree > kMaxPolyDegree.
[[nodiscard]] DesignMoments build_poly_design(const IntervalDesign& design, int degree);

/// The log-t design using grid averages (1/(K+1)) sum log^m(t_j) instead of
/// integrals. With this matrix the continuum estimator is exactly discrete OLS.
[[nodiscard]] DesignMoments build_log_design_on_grid(const TGrid& grid);

/// Solves X beta = rhs by LU with partial pivoting.
[[nodiscard]] Eigen::VectorXd solve_normal_equations(const DesignMoments& design,
                                                     const Eigen::VectorXd& rhs);

}  // namespace stablefit
