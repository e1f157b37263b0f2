#include "stablefit/ecf.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <utility>

#include "stablefit/errors.hpp"

namespace stablefit {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 2) {
        throw DomainError("need at least 2 observations, got " + std::to_string(values_.size()));
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw DomainError("observation " + std::to_string(i) + " is not finite");
        }
    }
}

bool Sample::is_constant() const noexcept {
    return std::all_of(values_.begin(), values_.end(),
                       [first = values_.front()](double v) { return v == first; });
}

TGrid::TGrid(double x0, double d, int intervals) : x0_(x0), d_(d), intervals_(intervals) {
    if (!(x0 > 0.0) || !std::isfinite(x0)) {
        throw DomainError("grid start x0 must be finite and > 0");
    }
    if (!(d > 0.0) || !std::isfinite(d)) {
        throw DomainError("grid width d must be finite and > 0");
    }
    if (intervals < 1) {
        throw DomainError("grid needs K >= 1 subintervals");
    }
}

double TGrid::point(std::size_t j) const noexcept {
    if (j == static_cast<std::size_t>(intervals_)) {
        return x0_ + d_;
    }
    return x0_ + d_ * static_cast<double>(j) / static_cast<double>(intervals_);
}

std::vector<double> TGrid::points() const {
    std::vector<double> ts(size());
    for (std::size_t j = 0; j < ts.size(); ++j) {
        ts[j] = point(j);
    }
    return ts;
}

double ecf_modulus_sq(const Sample& sample, double t) {
    double re = 0.0;
    double im = 0.0;
    for (double x : sample.values()) {
        re += std::cos(t * x);
        im += std::sin(t * x);
    }
    const auto n = static_cast<double>(sample.size());
    re /= n;
    im /= n;
    // Rounding can push the sum a hair past one.
    return std::min(re * re + im * im, 1.0);
}

double z_transform(double v, ClampCounter& counter) {
    constexpr double upper = 1.0 - kModulusCeilingGap;
    if (v < kModulusFloor) {
        v = kModulusFloor;
        ++counter.count;
    } else if (v > upper) {
        v = upper;
        ++counter.count;
    }
    return std::log(-std::log(v));
}

double z_transform(double v) {
    ClampCounter ignored;
    return z_transform(v, ignored);
}

ModulusSource empirical_modulus(Sample sample) {
    auto shared = std::make_shared<const Sample>(std::move(sample));
    return [shared](double t) { return ecf_modulus_sq(*shared, t); };
}

ModulusSource exact_modulus(const StableParams& params) {
    return [params](double t) { return cf_modulus_sq(params, t); };
}

ZGrid z_on_points(const ModulusSource& modulus, std::span<const double> ts) {
    ZGrid out;
    out.points.reserve(ts.size());
    ClampCounter counter;
    for (double t : ts) {
        out.points.push_back({t, z_transform(modulus(t), counter)});
    }
    out.clamp_count = counter.count;
    return out;
}

ZGrid z_on_grid(const ModulusSource& modulus, const TGrid& grid) {
    const auto ts = grid.points();
    return z_on_points(modulus, ts);
}

ZGrid z_on_grid(const Sample& sample, const TGrid& grid) {
    ZGrid out;
    out.points.reserve(grid.size());
    ClampCounter counter;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double t = grid.point(j);
        out.points.push_back({t, z_transform(ecf_modulus_sq(sample, t), counter)});
    }
    out.clamp_count = counter.count;
    return out;
}

}  // namespace stablefit
