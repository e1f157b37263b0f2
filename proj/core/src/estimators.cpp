#include "stablefit/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "stablefit/errors.hpp"

namespace stablefit {

namespace {

void require_informative(const Sample& sample) {
    if (sample.is_constant()) {
        throw DegenerateSampleError(
            "all observations are identical; the empirical characteristic function has "
            "modulus one everywhere and carries no information");
    }
}

// Clamps the slope into the admissible alpha range and recovers sigma.
void finish(Estimate& est, double intercept, double slope) {
    if (!std::isfinite(intercept) || !std::isfinite(slope)) {
        throw EstimationError("regression produced a non-finite coefficient");
    }
    est.intercept = intercept;
    est.raw_slope = slope;
    est.alpha_hat = std::clamp(slope, kAlphaMin, kAlphaMax);
    est.slope_clamped = est.alpha_hat != slope;
    est.sigma_hat = recover_sigma(RegressionLine(intercept, est.alpha_hat));
}

Estimate finish_infinite_ls(const ZGrid& z, const IntervalDesign& design, const TGrid& grid,
                            DesignMomentMode mode) {
    const DesignMoments x = mode == DesignMomentMode::integral ? build_log_design(design)
                                                               : build_log_design_on_grid(grid);
    const YMoments m = y_moments(z);
    const Eigen::Vector2d beta = solve_normal_equations(x, Eigen::Vector2d(m.mu0, m.mu1));

    Estimate est;
    est.method = Method::infinite_ls;
    est.clamp_count = z.clamp_count;
    est.grid = {design.x0(), design.d(), grid.intervals(), {}};

    double rss = 0.0;
    for (const auto& p : z.points) {
        const double r = p.z - beta[0] - beta[1] * std::log(p.t);
        rss += r * r;
    }
    est.s_squared = rss / grid.intervals();
    est.coef_cov = est.s_squared * x.matrix.inverse();
    finish(est, beta[0], beta[1]);
    return est;
}

Estimate ols_on_z(const ZGrid& z, Method label) {
    const auto count = static_cast<double>(z.points.size());
    double mean_w = 0.0;
    double mean_z = 0.0;
    for (const auto& p : z.points) {
        mean_w += std::log(p.t);
        mean_z += p.z;
    }
    mean_w /= count;
    mean_z /= count;

    double sxx = 0.0;
    double sxz = 0.0;
    double sum_w2 = 0.0;
    for (const auto& p : z.points) {
        const double w = std::log(p.t);
        sxx += (w - mean_w) * (w - mean_w);
        sxz += (w - mean_w) * (p.z - mean_z);
        sum_w2 += w * w;
    }
    if (!(sxx > 0.0)) {
        throw DomainError("regression points must contain at least two distinct t values");
    }
    const double slope = sxz / sxx;
    const double intercept = mean_z - slope * mean_w;

    double rss = 0.0;
    for (const auto& p : z.points) {
        const double r = p.z - intercept - slope * std::log(p.t);
        rss += r * r;
    }

    Estimate est;
    est.method = label;
    est.clamp_count = z.clamp_count;
    est.s_squared = z.points.size() > 2 ? rss / (count - 2.0) : 0.0;
    // (A^T A)^-1 for A = [1, w] in closed form.
    const double det = count * sxx;
    Eigen::Matrix2d inv;
    inv << sum_w2 / det, -count * mean_w / det, -count * mean_w / det, count / det;
    est.coef_cov = est.s_squared * inv;
    for (const auto& p : z.points) {
        est.grid.points.push_back(p.t);
    }
    finish(est, intercept, slope);
    return est;
}

void require_grid_size(int K) {
    if (K < 2) {
        throw DomainError("infinite-ls needs K >= 2 grid intervals, got " + std::to_string(K));
    }
}

}  // namespace

std::string_view method_name(Method method) noexcept {
    switch (method) {
        case Method::infinite_ls:
            return "infinite-ls";
        case Method::kogon_williams:
            return "kogon-williams";
        case Method::koutrouvelis:
            return "koutrouvelis";
    }
    return "unknown";
}

Method parse_method(std::string_view name) {
    for (Method m : {Method::infinite_ls, Method::kogon_williams, Method::koutrouvelis}) {
        if (name == method_name(m)) {
            return m;
        }
    }
    throw DomainError("unknown method '" + std::string(name)
                      + "' (expected infinite-ls, kogon-williams or koutrouvelis)");
}

double Estimate::alpha_standard_error() const { return std::sqrt(std::max(coef_cov(1, 1), 0.0)); }

YMoments y_moments(const ZGrid& z) {
    YMoments m;
    for (const auto& p : z.points) {
        m.mu0 += p.z;
        m.mu1 += std::log(p.t) * p.z;
    }
    const auto count = static_cast<double>(z.points.size());
    m.mu0 /= count;
    m.mu1 /= count;
    return m;
}

YMoments y_moments(const Sample& sample, const TGrid& grid) {
    return y_moments(z_on_grid(sample, grid));
}

Estimate fit_infinite_ls(const Sample& sample, const IntervalDesign& design, int K,
                         DesignMomentMode mode) {
    require_grid_size(K);
    require_informative(sample);
    const TGrid grid(design.x0(), design.d(), K);
    return finish_infinite_ls(z_on_grid(sample, grid), design, grid, mode);
}

Estimate fit_infinite_ls(const ModulusSource& modulus, const IntervalDesign& design, int K,
                         DesignMomentMode mode) {
    require_grid_size(K);
    const TGrid grid(design.x0(), design.d(), K);
    return finish_infinite_ls(z_on_grid(modulus, grid), design, grid, mode);
}

std::vector<double> kogon_williams_points() {
    std::vector<double> ts(10);
    for (int k = 1; k <= 10; ++k) {
        ts[k - 1] = k / 10.0;
    }
    return ts;
}

std::vector<double> koutrouvelis_points(int num_points) {
    if (num_points < 2) {
        throw DomainError("koutrouvelis needs at least 2 points to fit a line, got "
                          + std::to_string(num_points));
    }
    std::vector<double> ts(static_cast<std::size_t>(num_points));
    for (int k = 1; k <= num_points; ++k) {
        ts[k - 1] = std::numbers::pi * k / 25.0;
    }
    return ts;
}

Estimate fit_on_points(const ModulusSource& modulus, std::span<const double> ts, Method label) {
    if (ts.size() < 2) {
        throw DomainError("need at least 2 regression points");
    }
    for (double t : ts) {
        if (!(t > 0.0)) {
            throw DomainError("regression points must be > 0");
        }
    }
    return ols_on_z(z_on_points(modulus, ts), label);
}

Estimate fit_kogon_williams(const Sample& sample) {
    require_informative(sample);
    const auto ts = kogon_williams_points();
    ZGrid z;
    z.points.reserve(ts.size());
    ClampCounter counter;
    for (double t : ts) {
        z.points.push_back({t, z_transform(ecf_modulus_sq(sample, t), counter)});
    }
    z.clamp_count = counter.count;
    return ols_on_z(z, Method::kogon_williams);
}

Estimate fit_kogon_williams(const ModulusSource& modulus) {
    return fit_on_points(modulus, kogon_williams_points(), Method::kogon_williams);
}

Estimate fit_koutrouvelis(const Sample& sample, int num_points) {
    const auto ts = koutrouvelis_points(num_points);
    require_informative(sample);
    ZGrid z;
    z.points.reserve(ts.size());
    ClampCounter counter;
    for (double t : ts) {
        z.points.push_back({t, z_transform(ecf_modulus_sq(sample, t), counter)});
    }
    z.clamp_count = counter.count;
    return ols_on_z(z, Method::koutrouvelis);
}

Estimate fit_koutrouvelis(const ModulusSource& modulus, int num_points) {
    return fit_on_points(modulus, koutrouvelis_points(num_points), Method::koutrouvelis);
}

std::vector<double> fit_poly_infinite_ls(std::span<const double> y_values,
                                         const IntervalDesign& design, int degree) {
    const DesignMoments x = build_poly_design(design, degree);
    if (y_values.size() < 2) {
        throw DomainError("need y values on at least two grid points");
    }
    const auto K = static_cast<double>(y_values.size() - 1);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(degree + 1);
    for (std::size_t j = 0; j < y_values.size(); ++j) {
        const double t = design.x0() + design.d() * static_cast<double>(j) / K;
        double power = 1.0;
        for (int l = 0; l <= degree; ++l) {
            rhs[l] += y_values[j] * power;
            power *= t;
        }
    }
    rhs /= static_cast<double>(y_values.size());
    const Eigen::VectorXd beta = solve_normal_equations(x, rhs);
    return {beta.begin(), beta.end()};
}

Estimate estimate(const Sample& sample, const EstimatorConfig& config) {
    if (!(config.prescale > 0.0) || !std::isfinite(config.prescale)) {
        throw DomainError("prescale must be finite and > 0");
    }
    auto run = [&](const Sample& data) {
        switch (config.method) {
            case Method::infinite_ls:
                return fit_infinite_ls(data, IntervalDesign(config.x0, config.d), config.K);
            case Method::kogon_williams:
                return fit_kogon_williams(data);
            case Method::koutrouvelis:
                return fit_koutrouvelis(data, config.koutrouvelis_points);
        }
        throw DomainError("unknown method");
    };
    if (config.prescale == 1.0) {
        return run(sample);
    }
    std::vector<double> scaled(sample.values().begin(), sample.values().end());
    for (double& v : scaled) {
        v /= config.prescale;
    }
    Estimate est = run(Sample(std::move(scaled)));
    est.sigma_hat *= config.prescale;
    est.intercept += est.alpha_hat * std::log(config.prescale);
    return est;
}

}  // namespace stablefit
