#include "stablefit/design.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "stablefit/errors.hpp"

namespace stablefit {

namespace {

// Unevaluated sum hi + lo.
struct Compensated {
    double hi = 0.0;
    double lo = 0.0;
};

Compensated two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

Compensated normalize(double hi, double lo) {
    const double s = hi + lo;
    return {s, lo - (s - hi)};
}

Compensated add(Compensated x, Compensated y) {
    const Compensated s = two_sum(x.hi, y.hi);
    return normalize(s.hi, s.lo + x.lo + y.lo);
}

Compensated mul(Compensated x, Compensated y) {
    const double p = x.hi * y.hi;
    const double e = std::fma(x.hi, y.hi, -p);
    return normalize(p, e + x.hi * y.lo + x.lo * y.hi);
}

Compensated div(Compensated x, double y) {
    const double q = x.hi / y;
    const double r = std::fma(-q, y, x.hi) + x.lo;
    return normalize(q, r / y);
}

// Binomial form of the power moment; every term is non-negative.
Compensated compensated_power_moment(double a, double d, int order) {
    Compensated sum;
    double binom = order + 1.0;  // C(order+1, j+1) at j = 0
    for (int j = 0; j <= order; ++j) {
        Compensated term{binom, 0.0};
        for (int k = 0; k < order - j; ++k) term = mul(term, {a, 0.0});
        for (int k = 0; k < j; ++k) term = mul(term, {d, 0.0});
        sum = add(sum, term);
        binom = binom * (order - j) / (j + 2.0);
    }
    return div(sum, order + 1.0);
}

}  // namespace

IntervalDesign::IntervalDesign(double x0, double d) : x0_(x0), d_(d) {
    if (!(x0 >= 0.0) || !std::isfinite(x0)) {
        throw DomainError("interval start x0 must be finite and >= 0");
    }
    if (!(d > 0.0) || !std::isfinite(d)) {
        throw DomainError("interval width d must be finite and > 0");
    }
}

double DesignMoments::determinant() const {
    if (matrix.rows() == 2 && residue.rows() == 2) {
        auto at = [&](int i, int j) { return Compensated{matrix(i, j), residue(i, j)}; };
        const Compensated ad = mul(at(0, 0), at(1, 1));
        const Compensated bc = mul(at(0, 1), at(1, 0));
        return add(ad, {-bc.hi, -bc.lo}).hi;
    }
    if (matrix.rows() == 2) {
        // Kahan's fma form of ad - bc.
        const double w = matrix(0, 1) * matrix(1, 0);
        const double e = std::fma(-matrix(0, 1), matrix(1, 0), w);
        const double f = std::fma(matrix(0, 0), matrix(1, 1), -w);
        return f + e;
    }
    return matrix.determinant();
}

double DesignMoments::condition_estimate() const {
    const Eigen::MatrixXd inverse = matrix.partialPivLu().inverse();
    auto norm1 = [](const Eigen::MatrixXd& m) { return m.cwiseAbs().colwise().sum().maxCoeff(); };
    return norm1(matrix) * norm1(inverse);
}

bool DesignMoments::is_positive_definite() const {
    return matrix.llt().info() == Eigen::Success;
}

double log_moment(const IntervalDesign& design, int order) {
    if (order != 1 && order != 2) {
        throw UnsupportedOrderError("log moments are implemented for orders 1 and 2, got "
                                    + std::to_string(order));
    }
    const double a = design.x0();
    const double b = design.upper();
    const double d = design.d();
    if (!(a > 0.0)) {
        throw DomainError("log moments need x0 > 0 (log t is undefined at 0)");
    }
    const double la = std::log(a);
    const double lb = std::log(b);
    const double first = (b * lb - a * la - d) / d;
    if (order == 1) {
        return first;
    }
    return (b * lb * lb - a * la * la - 2.0 * d * first) / d;
}

double power_moment(const IntervalDesign& design, int order) {
    if (order < 0) {
        throw DomainError("power moment order must be >= 0");
    }
    if (order == 0) {
        return 1.0;
    }
    return compensated_power_moment(design.x0(), design.d(), order).hi;
}

DesignMoments build_log_design(const IntervalDesign& design) {
    const double x12 = log_moment(design, 1);
    const double x22 = log_moment(design, 2);
    DesignMoments out;
    out.matrix.resize(2, 2);
    out.matrix << 1.0, x12, x12, x22;
    out.kind = ModelKind::log_t;
    out.degree = 1;
    return out;
}

DesignMoments build_poly_design(const IntervalDesign& design, int degree) {
    if (degree < 1) {
        throw DomainError("polynomial degree must be >= 1");
    }
    if (degree > kMaxPolyDegree) {
        throw ConditioningError("polynomial degree " + std::to_string(degree)
                                + " exceeds the cap of " + std::to_string(kMaxPolyDegree)
                                + "; the moment matrix is numerically singular");
    }
    const int p = degree + 1;
    std::vector<Compensated> moments(2 * degree + 1, Compensated{1.0, 0.0});
    for (int l = 1; l <= 2 * degree; ++l) {
        moments[l] = compensated_power_moment(design.x0(), design.d(), l);
    }
    DesignMoments out;
    out.matrix.resize(p, p);
    out.residue.resize(p, p);
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
            out.matrix(i, j) = moments[i + j].hi;
            out.residue(i, j) = moments[i + j].lo;
        }
    }
    out.kind = degree == 1 ? ModelKind::linear_t : ModelKind::polynomial;
    out.degree = degree;
    return out;
}

DesignMoments build_log_design_on_grid(const TGrid& grid) {
    double s1 = 0.0;
    double s2 = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double lt = std::log(grid.point(j));
        s1 += lt;
        s2 += lt * lt;
    }
    const auto count = static_cast<double>(grid.size());
    DesignMoments out;
    out.matrix.resize(2, 2);
    out.matrix << 1.0, s1 / count, s1 / count, s2 / count;
    out.kind = ModelKind::log_t;
    out.degree = 1;
    return out;
}

Eigen::VectorXd solve_normal_equations(const DesignMoments& design, const Eigen::VectorXd& rhs) {
    if (rhs.size() != design.matrix.rows()) {
        throw DomainError("right-hand side has " + std::to_string(rhs.size())
                          + " entries, design has " + std::to_string(design.matrix.rows()));
    }
    return design.matrix.partialPivLu().solve(rhs);
}

}  // namespace stablefit
