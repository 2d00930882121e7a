#include <cmath>
#include <limits>

#include <doctest.h>

#include "gausscorr/core.hpp"
#include "gausscorr/measures.hpp"

using namespace gausscorr;

TEST_CASE("parameter validation rejects bad input at construction") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(SystemParams(0.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(SystemParams(1.0, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(SystemParams(1.0, 1.0, nan), std::invalid_argument);
    CHECK_THROWS_AS(BathParams(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(BathParams(0.1, -0.5), std::invalid_argument);
    CHECK_THROWS_AS(BathParams(0.1, inf), std::invalid_argument);
    CHECK_THROWS_AS(SqueezedThermalSpec(-0.1, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(SqueezedThermalSpec(1.0, nan, 0.0), std::invalid_argument);
    CHECK_NOTHROW(BathParams(0.1, 0.0));

    const SystemParams defaults(1.5, 2.5);
    CHECK(defaults.mass() == 1.0);
    CHECK(defaults.omega(0) == 1.5);
    CHECK(defaults.omega(1) == 2.5);
}

TEST_CASE("covariance matrix rejects asymmetric or non-finite entries") {
    Matrix4<double> m = Matrix4<double>::Identity() / 2.0;
    m(0, 1) = 0.1;
    CHECK_THROWS_AS(CovarianceMatrix<double>{m}, std::invalid_argument);
    m(1, 0) = 0.1;
    CHECK_NOTHROW(CovarianceMatrix<double>{m});
    m(2, 2) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(CovarianceMatrix<double>{m}, std::invalid_argument);
}

TEST_CASE("block accessors and partial transpose") {
    const auto sigma = squeezed_thermal_covariance(SqueezedThermalSpec(0.5, 1.0, 2.0));
    CHECK(sigma.C()(0, 0) == doctest::Approx(sigma(0, 2)));
    CHECK(sigma.C()(1, 1) == doctest::Approx(-sigma(0, 2)));
    CHECK(sigma.A()(0, 0) == sigma(0, 0));
    CHECK(sigma.B()(1, 1) == sigma(3, 3));
    const auto flipped = sigma.partial_transpose();
    CHECK(flipped(1, 3) == -sigma(1, 3));
    CHECK(flipped(3, 3) == sigma(3, 3));
    CHECK(flipped.C().determinant() == doctest::Approx(-sigma.C().determinant()));
}

TEST_CASE("squeezed thermal covariance") {
    SUBCASE("vacuum") {
        const auto sigma = squeezed_thermal_covariance(SqueezedThermalSpec(0.0, 0.0, 0.0));
        CHECK((sigma.matrix() - Matrix4<double>::Identity() / 2.0).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("figure parameters r=3, n1=3, n2=1") {
        const auto sigma = squeezed_thermal_covariance(SqueezedThermalSpec(3.0, 3.0, 1.0));
        const double ch = std::cosh(3.0);
        const double sh = std::sinh(3.0);
        const double a = 3 * ch * ch + sh * sh + std::cosh(6.0) / 2;
        const double b = 3 * sh * sh + ch * ch + std::cosh(6.0) / 2;
        const double c = 2.5 * std::sinh(6.0);
        CHECK(sigma(0, 0) == doctest::Approx(a).epsilon(1e-14));
        CHECK(sigma(1, 1) == doctest::Approx(a).epsilon(1e-14));
        CHECK(sigma(2, 2) == doctest::Approx(b).epsilon(1e-14));
        CHECK(sigma(0, 2) == doctest::Approx(c).epsilon(1e-14));
        CHECK(sigma(1, 3) == doctest::Approx(-c).epsilon(1e-14));
        CHECK(sigma(0, 1) == 0.0);
        CHECK(sigma(0, 3) == 0.0);
    }
    SUBCASE("two-mode squeezed vacuum is pure") {
        const auto sigma = squeezed_thermal_covariance(SqueezedThermalSpec(1.0, 0.0, 0.0));
        CHECK(sigma.matrix().determinant() == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
        CHECK(sigma(0, 0) == doctest::Approx(std::cosh(2.0) / 2));
        CHECK(sigma(0, 2) == doctest::Approx(std::sinh(2.0) / 2));
    }
}

TEST_CASE("squeezed thermal states are physical and a, b, c grow with r") {
    for (double n1 : {0.0, 0.5, 3.0}) {
        for (double n2 : {0.0, 1.0, 4.0}) {
            double prev_a = 0.0;
            double prev_b = 0.0;
            double prev_c = -1.0;
            for (int k = 0; k <= 30; ++k) {
                const double r = 0.1 * k;
                const auto sigma = squeezed_thermal_covariance(SqueezedThermalSpec(r, n1, n2));
                CHECK(symplectic_eigenvalues(sigma).nu_minus_hat >= 1.0 - 1e-9);
                CHECK(sigma(0, 0) > prev_a);
                CHECK(sigma(2, 2) > prev_b);
                CHECK(sigma(0, 2) > prev_c);
                prev_a = sigma(0, 0);
                prev_b = sigma(2, 2);
                prev_c = sigma(0, 2);
            }
        }
    }
}

TEST_CASE("separability threshold") {
    CHECK(separability_threshold(0.0, 0.0) == 0.0);
    // arccosh(sqrt(1.6)), evaluated at 40 digits.
    CHECK(separability_threshold(3.0, 1.0) == doctest::Approx(0.71270847153530629).epsilon(1e-14));

    const double symmetric[] = {0.0, 0.54930614433405485, 0.80471895621705019, 0.97295507452765665};
    for (int n = 0; n < 4; ++n) {
        CHECK(separability_threshold(n, n) == doctest::Approx(symmetric[n]).epsilon(1e-14));
        if (n > 0) {
            CHECK(separability_threshold(n, n) > separability_threshold(n - 1, n - 1));
        }
    }
    CHECK_THROWS_AS(separability_threshold(-1.0, 0.0), std::invalid_argument);
}

TEST_CASE("entanglement of the initial state switches on at the threshold") {
    for (double n1 : {0.0, 0.5, 1.0, 3.0, 6.0}) {
        for (double n2 : {0.0, 1.0, 2.5}) {
            const double rs = separability_threshold(n1, n2);
            for (double frac : {0.0, 0.25, 0.5, 0.9, 0.999}) {
                const auto sigma = squeezed_thermal_covariance(SqueezedThermalSpec(frac * rs, n1, n2));
                CHECK(log_negativity(sigma) == 0.0);
            }
            for (double above : {1e-5, 0.01, 0.3, 1.5}) {
                const auto sigma = squeezed_thermal_covariance(SqueezedThermalSpec(rs + above, n1, n2));
                CHECK(log_negativity(sigma) > 0.0);
            }
        }
    }
}
