#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "stablefit/stable_model.hpp"

namespace stablefit {

/// A finite sample of at least two observations.
class Sample {
public:
    /// Throws DomainError if fewer than two values or any value is not finite.
    explicit Sample(std::vector<double> values);

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

    /// True when every observation equals the first one.
    [[nodiscard]] bool is_constant() const noexcept;

private:
    std::vector<double> values_;
};

/// Equispaced grid t_j = x0 + j d / K, j = 0..K (K + 1 points).
class TGrid {
public:
    /// Throws DomainError unless x0 > 0, d > 0 and intervals >= 1.
    TGrid(double x0, double d, int intervals);

    [[nodiscard]] double x0() const noexcept { return x0_; }
    [[nodiscard]] double d() const noexcept { return d_; }
    /// K, the number of subintervals.
    [[nodiscard]] int intervals() const noexcept { return intervals_; }
    [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(intervals_) + 1; }

    [[nodiscard]] double point(std::size_t j) const noexcept;
    [[nodiscard]] std::vector<double> points() const;

private:
    double x0_;
    double d_;
    int intervals_;
};

/// |phi_n(t)|^2 with phi_n(t) = (1/n) sum exp(i t x_k).
/// Summation runs over the sample in storage order.
[[nodiscard]] double ecf_modulus_sq(const Sample& sample, double t);

/// Clamp bounds applied before the double-log transform.
inline constexpr double kModulusFloor = 1e-300;
inline constexpr double kModulusCeilingGap = 1e-12;

struct ClampCounter {
    std::size_t count = 0;
};

/// log(-log(v)) with v clamped into [kModulusFloor, 1 - kModulusCeilingGap].
/// Every clamped input increments `counter`.
[[nodiscard]] double z_transform(double v, ClampCounter& counter);
[[nodiscard]] double z_transform(double v);

/// Source of |phi(t)|^2 values. The empirical source is the default; the
/// exact source lets callers check estimators without sampling noise.
using ModulusSource = std::function<double(double)>;

[[nodiscard]] ModulusSource empirical_modulus(Sample sample);
[[nodiscard]] ModulusSource exact_modulus(const StableParams& params);

struct ZPoint {
    double t;
    double z;
};

struct ZGrid {
    std::vector<ZPoint> points;
    std::size_t clamp_count = 0;
};

/// z_j = z_transform(|phi(t_j)|^2) in grid order.
[[nodiscard]] ZGrid z_on_grid(const Sample& sample, const TGrid& grid);
[[nodiscard]] ZGrid z_on_grid(const ModulusSource& modulus, const TGrid& grid);

/// Same transform on an arbitrary list of positive t values.
[[nodiscard]] ZGrid z_on_points(const ModulusSource& modulus, std::span<const double> ts);

}  // namespace stablefit
