#include "stablefit/stable_model.hpp"

#include <cmath>
#include <string>

#include "stablefit/errors.hpp"

namespace stablefit {

namespace {

void require_positive_t(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw DomainError("t must be finite and > 0, got " + std::to_string(t));
    }
}

}  // namespace

StableParams::StableParams(double alpha, double sigma, double beta, double mu)
    : alpha_(alpha), sigma_(sigma), beta_(beta), mu_(mu) {
    if (!(alpha > 0.0 && alpha <= 2.0)) {
        throw DomainError("alpha must lie in (0, 2], got " + std::to_string(alpha));
    }
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw DomainError("sigma must be finite and > 0, got " + std::to_string(sigma));
    }
    if (!(beta >= -1.0 && beta <= 1.0)) {
        throw DomainError("beta must lie in [-1, 1], got " + std::to_string(beta));
    }
    if (!std::isfinite(mu)) {
        throw DomainError("mu must be finite");
    }
}

RegressionLine::RegressionLine(double intercept_, double slope_)
    : intercept(intercept_), slope(slope_) {
    if (!std::isfinite(intercept) || !std::isfinite(slope)) {
        throw DomainError("regression line needs a finite intercept and slope");
    }
}

double cf_modulus_sq(const StableParams& params, double t) {
    require_positive_t(t);
    return std::exp(-2.0 * std::pow(params.sigma() * t, params.alpha()));
}

double exact_y(const StableParams& params, double t) {
    require_positive_t(t);
    return std::log(2.0) + params.alpha() * std::log(params.sigma()) + params.alpha() * std::log(t);
}

RegressionLine exact_line(const StableParams& params) {
    return {std::log(2.0) + params.alpha() * std::log(params.sigma()), params.alpha()};
}

double recover_sigma(const RegressionLine& line) {
    if (!(line.slope > 0.0)) {
        throw EstimationError("cannot recover sigma from a non-positive slope ("
                              + std::to_string(line.slope) + ")");
    }
    // (exp(m) / 2)^(1/alpha) evaluated in log space.
    const double sigma = std::exp((line.intercept - std::log(2.0)) / line.slope);
    if (!std::isfinite(sigma) || !(sigma > 0.0)) {
        throw EstimationError("recovered sigma is not a finite positive number");
    }
    return sigma;
}

}  // namespace stablefit
