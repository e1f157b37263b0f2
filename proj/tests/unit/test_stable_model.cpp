#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "stablefit/errors.hpp"
#include "stablefit/stable_model.hpp"

using namespace stablefit;

TEST_SUITE("stable_model") {

TEST_CASE("StableParams rejects values outside the parameter space") {
    CHECK_NOTHROW(StableParams(2.0, 1.0));
    CHECK_NOTHROW(StableParams(0.01, 3.0, -1.0, 5.0));
    CHECK_THROWS_AS(StableParams(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(StableParams(2.01, 1.0), DomainError);
    CHECK_THROWS_AS(StableParams(1.5, 0.0), DomainError);
    CHECK_THROWS_AS(StableParams(1.5, -1.0), DomainError);
    CHECK_THROWS_AS(StableParams(1.5, 1.0, 1.5), DomainError);
    CHECK_THROWS_AS(StableParams(1.5, 1.0, 0.0, NAN), DomainError);
    CHECK_THROWS_AS(StableParams(NAN, 1.0), DomainError);
}

TEST_CASE("cf_modulus_sq closed form") {
    CHECK(cf_modulus_sq(StableParams(1.5, 1.0), 1.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
    CHECK(cf_modulus_sq(StableParams(2.0, 1.0), 0.5) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
    // mpmath, 30 digits: exp(-2 * 1.3^0.7 * 0.3^0.7)
    CHECK(cf_modulus_sq(StableParams(0.7, 1.3), 0.3)
          == doctest::Approx(0.355366174764376656189814805802).epsilon(1e-14));
    CHECK_THROWS_AS((void)cf_modulus_sq(StableParams(1.5, 1.0), 0.0), DomainError);
    CHECK_THROWS_AS((void)cf_modulus_sq(StableParams(1.5, 1.0), -1.0), DomainError);
}

TEST_CASE("cf_modulus_sq stays in (0, 1] and decreases in t") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> alpha(0.1, 2.0);
    std::uniform_real_distribution<double> sigma(0.1, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const StableParams p(alpha(rng), sigma(rng));
        double previous = 1.0;
        for (double t = 0.01; t < 5.0; t += 0.05) {
            const double v = cf_modulus_sq(p, t);
            REQUIRE(v > 0.0);
            REQUIRE(v <= 1.0);
            REQUIRE(v <= previous);
            previous = v;
        }
    }
}

TEST_CASE("exact_y examples") {
    CHECK(exact_y(StableParams(1.5, 1.0), 1.0) == doctest::Approx(std::log(2.0)));
    CHECK(std::abs(exact_y(StableParams(1.0, 0.5), 1.0)) < 1e-15);
    CHECK(exact_y(StableParams(1.5, 1.0), std::numbers::e) == doctest::Approx(std::log(2.0) + 1.5));
    CHECK_THROWS_AS((void)exact_y(StableParams(1.5, 1.0), 0.0), DomainError);
}

TEST_CASE("exact_y is linear in log t") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> alpha(0.1, 2.0);
    std::uniform_real_distribution<double> t(0.01, 10.0);
    for (int trial = 0; trial < 500; ++trial) {
        const StableParams p(alpha(rng), 1.7);
        const double t1 = t(rng);
        const double t2 = t(rng);
        const double diff = exact_y(p, t2) - exact_y(p, t1);
        REQUIRE(std::abs(diff - p.alpha() * (std::log(t2) - std::log(t1))) < 1e-12);
    }
}

TEST_CASE("recover_sigma examples") {
    CHECK(recover_sigma({std::log(2.0), 1.5}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(recover_sigma({0.0, 1.0}) == doctest::Approx(0.5).epsilon(1e-15));
    const double m = std::log(2.0 * std::pow(1.3, 0.7));
    CHECK(recover_sigma({m, 0.7}) == doctest::Approx(1.3).epsilon(1e-14));
    CHECK_THROWS_AS((void)recover_sigma({0.0, 0.0}), EstimationError);
    CHECK_THROWS_AS((void)recover_sigma({0.0, -0.3}), EstimationError);
    CHECK_THROWS_AS(RegressionLine(NAN, 1.0), DomainError);
}

TEST_CASE("recover_sigma round-trips the exact line") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> alpha(0.3, 2.0);
    std::uniform_real_distribution<double> log_sigma(-3.0, 3.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const StableParams p(alpha(rng), std::exp(log_sigma(rng)));
        const double sigma = recover_sigma({std::log(2.0 * std::pow(p.sigma(), p.alpha())), p.alpha()});
        REQUIRE(std::abs(sigma / p.sigma() - 1.0) < 1e-12);
        REQUIRE(std::abs(recover_sigma(exact_line(p)) / p.sigma() - 1.0) < 1e-12);
    }
}

}
