#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "stablefit/design.hpp"
#include "stablefit/ecf.hpp"

namespace stablefit {

// Estimators of (alpha, sigma) for symmetric stable samples, all based on the
// line z(t) = log(2 sigma^alpha) + alpha log t with z(t) = log(-log |phi_n(t)|^2):
//
//   infinite-ls     continuum least squares over [x0, x0 + d]: exact integral
//                   design moments, response moments averaged on a K-grid.
//   kogon-williams  OLS on the fixed points t = 0.1, 0.2, ..., 1.0.
//   koutrouvelis    OLS on t_k = pi k / 25, k = 1..num_points.
//
// All of them assume beta = 0 and mu = 0 and use the raw (unstandardized) data.

enum class Method { infinite_ls, kogon_williams, koutrouvelis };

[[nodiscard]] std::string_view method_name(Method method) noexcept;
/// Accepts the names produced by method_name. Throws DomainError otherwise.
[[nodiscard]] Method parse_method(std::string_view name);

inline constexpr double kAlphaMin = 0.05;
inline constexpr double kAlphaMax = 2.0;
inline constexpr double kDefaultX0 = 0.1;
inline constexpr double kDefaultWidth = 1.9;
inline constexpr int kDefaultGridIntervals = 500;
/// Used when no tuned point count is supplied; not optimal for any particular alpha.
inline constexpr int kDefaultKoutrouvelisPoints = 10;

struct GridMeta {
    double x0 = 0.0;
    double d = 0.0;
    int intervals = 0;
    /// Regression abscissae for the fixed-grid methods; empty for infinite-ls.
    std::vector<double> points;
};

struct Estimate {
    Method method = Method::infinite_ls;
    double alpha_hat = 0.0;
    double sigma_hat = 0.0;
    /// Fitted log(2 sigma^alpha).
    double intercept = 0.0;
    /// Fitted slope before clamping into [kAlphaMin, kAlphaMax].
    double raw_slope = 0.0;
    double s_squared = 0.0;
    /// Covariance of (intercept, slope).
    Eigen::Matrix2d coef_cov = Eigen::Matrix2d::Zero();
    /// Number of |phi|^2 values clamped before the double-log transform.
    std::size_t clamp_count = 0;
    bool slope_clamped = false;
    GridMeta grid;

    [[nodiscard]] double alpha_standard_error() const;
};

/// Response moments (1/(K+1)) sum z_j and (1/(K+1)) sum log(t_j) z_j.
struct YMoments {
    double mu0 = 0.0;
    double mu1 = 0.0;
};

[[nodiscard]] YMoments y_moments(const ZGrid& z);
[[nodiscard]] YMoments y_moments(const Sample& sample, const TGrid& grid);

/// Which design matrix the continuum estimator pairs with the grid-averaged
/// response moments.
enum class DesignMomentMode {
    integral,  ///< exact (1/d) int log^m t dt
    grid,      ///< (1/(K+1)) sum log^m t_j, which makes the fit plain OLS on the grid
};

/// Continuum least-squares fit. Needs K >= 2. Throws DegenerateSampleError when
/// every observation is equal, EstimationError when no finite sigma results.
[[nodiscard]] Estimate fit_infinite_ls(const Sample& sample, const IntervalDesign& design, int K,
                                       DesignMomentMode mode = DesignMomentMode::integral);
[[nodiscard]] Estimate fit_infinite_ls(const ModulusSource& modulus, const IntervalDesign& design,
                                       int K, DesignMomentMode mode = DesignMomentMode::integral);

[[nodiscard]] std::vector<double> kogon_williams_points();
[[nodiscard]] std::vector<double> koutrouvelis_points(int num_points);

[[nodiscard]] Estimate fit_kogon_williams(const Sample& sample);
[[nodiscard]] Estimate fit_kogon_williams(const ModulusSource& modulus);

/// Throws DomainError if num_points < 2.
[[nodiscard]] Estimate fit_koutrouvelis(const Sample& sample, int num_points);
[[nodiscard]] Estimate fit_koutrouvelis(const ModulusSource& modulus, int num_points);

/// Ordinary least squares of z on log t over the given points. S^2 uses the
/// N - 2 residual degrees of freedom.
[[nodiscard]] Estimate fit_on_points(const ModulusSource& modulus, std::span<const double> ts,
                                     Method label);

/// Continuum polynomial fit of y_j observed at t_j = x0 + j d / K, j = 0..K,
/// where K = y_values.size() - 1. Solves the Hankel moment system with
/// right-hand side (1/(K+1)) sum y_j t_j^l. Returns (beta_0, ..., beta_degree).
[[nodiscard]] std::vector<double> fit_poly_infinite_ls(std::span<const double> y_values,
                                                       const IntervalDesign& design, int degree);

/// Everything needed to run one method on a sample.
struct EstimatorConfig {
    Method method = Method::infinite_ls;
    double x0 = kDefaultX0;
    double d = kDefaultWidth;
    int K = kDefaultGridIntervals;
    int koutrouvelis_points = kDefaultKoutrouvelisPoints;
    /// Observations are divided by this before fitting and sigma is scaled
    /// back. 1 leaves the data untouched.
    double prescale = 1.0;
};

[[nodiscard]] Estimate estimate(const Sample& sample, const EstimatorConfig& config);

}  // namespace stablefit
