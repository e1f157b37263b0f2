#pragma once

// Characteristic-function quantities of symmetric stable laws.
//
// For a stable law with index alpha and scale sigma,
//   |phi(t)|^2 = exp(-2 sigma^alpha |t|^alpha),
// so that log(-log |phi(t)|^2) = log(2 sigma^alpha) + alpha log|t| is a line in
// log t. Every estimator in this library regresses on that line. Skewness and
// location are carried for completeness but never enter |phi(t)|^2.

namespace stablefit {

class StableParams {
public:
    /// Throws DomainError unless alpha in (0, 2], sigma > 0, beta in [-1, 1]
    /// and mu is finite.
    StableParams(double alpha, double sigma, double beta = 0.0, double mu = 0.0);

    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double sigma() const noexcept { return sigma_; }
    [[nodiscard]] double beta() const noexcept { return beta_; }
    [[nodiscard]] double mu() const noexcept { return mu_; }

    [[nodiscard]] bool is_symmetric() const noexcept { return beta_ == 0.0 && mu_ == 0.0; }

    friend bool operator==(const StableParams&, const StableParams&) = default;

private:
    double alpha_;
    double sigma_;
    double beta_;
    double mu_;
};

/// Fitted or exact line y = intercept + slope * log t, with
/// intercept = log(2 sigma^alpha) and slope = alpha.
struct RegressionLine {
    RegressionLine(double intercept_, double slope_);

    double intercept;
    double slope;
};

/// exp(-2 sigma^alpha t^alpha). Throws DomainError for t <= 0.
[[nodiscard]] double cf_modulus_sq(const StableParams& params, double t);

/// log(2 sigma^alpha) + alpha log t. Throws DomainError for t <= 0.
[[nodiscard]] double exact_y(const StableParams& params, double t);

/// The exact regression line for the given parameters.
[[nodiscard]] RegressionLine exact_line(const StableParams& params);

/// Inverts intercept = log(2 sigma^alpha): sigma = (exp(intercept) / 2)^(1 / slope).
/// Throws EstimationError when slope <= 0 or the result is not finite and positive.
[[nodiscard]] double recover_sigma(const RegressionLine& line);

}  // namespace stablefit
