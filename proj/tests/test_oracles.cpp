#include <cmath>
#include <random>

#include <doctest.h>

#include "gausscorr/dynamics.hpp"
#include "gausscorr/oracles.hpp"

using namespace gausscorr;

TEST_CASE("expm_generic on simple inputs") {
    const Matrix4<double> zero = Matrix4<double>::Zero();
    CHECK((oracles::expm_generic(zero) - Matrix4<double>::Identity()).cwiseAbs().maxCoeff() == 0.0);

    Eigen::Matrix2d diag = Eigen::Vector2d(0.3, -2.0).asDiagonal();
    const Eigen::Matrix2d e = oracles::expm_generic(diag);
    CHECK(e(0, 0) == doctest::Approx(std::exp(0.3)).epsilon(1e-14));
    CHECK(e(1, 1) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    CHECK(e(0, 1) == 0.0);

    Eigen::MatrixXd dynamic = Eigen::MatrixXd::Zero(3, 3);
    dynamic(0, 1) = 1.0;
    const Eigen::MatrixXd nilpotent = oracles::expm_generic(dynamic);
    CHECK(nilpotent(0, 1) == doctest::Approx(1.0));
}

TEST_CASE("expm_generic reproduces the closed-form propagator and its inverse") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> mass(0.5, 2.0), omega(0.5, 4.0), lambda(0.01, 0.5), time(0.0, 20.0);
    for (int trial = 0; trial < 30; ++trial) {
        const SystemParams sys(mass(rng), omega(rng), omega(rng));
        const BathParams bath(lambda(rng), 0.0);
        const double t = trial == 0 ? 1.0 : time(rng);
        const Matrix4<double> yt = build_drift(sys, bath).matrix() * t;
        const auto forward = oracles::expm_generic(yt);
        const auto backward = oracles::expm_generic(Matrix4<double>(-yt));
        CHECK((forward - propagator(sys, bath, t)).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((forward * backward - Matrix4<double>::Identity()).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("rk4_integrate") {
    const SystemParams sys(1.0, 1.0, 2.0);
    const BathParams bath(0.1, 1.0);
    const auto y = build_drift(sys, bath).matrix();
    const auto d = build_diffusion(sys, bath).matrix();
    const auto sigma0 = squeezed_thermal_covariance(SqueezedThermalSpec(3.0, 3.0, 1.0));

    SUBCASE("t = 0") {
        CHECK((oracles::rk4_integrate(sigma0, y, d, 0.0, 1e-3).matrix() - sigma0.matrix()).isZero(0.0));
    }
    SUBCASE("steady state is a fixed point") {
        const auto fixed = steady_state(sys, bath);
        const auto out = oracles::rk4_integrate(fixed, y, d, 7.5, 1e-2);
        CHECK((out.matrix() - fixed.matrix()).cwiseAbs().maxCoeff() < 1e-10);
    }
    SUBCASE("fourth-order convergence") {
        const auto exact = evolve(sigma0, sys, bath, 5.0).matrix();
        double prev_error = 0.0;
        for (double step : {0.1, 0.05, 0.025}) {
            const double error = (oracles::rk4_integrate(sigma0, y, d, 5.0, step).matrix() - exact).cwiseAbs().maxCoeff();
            if (prev_error > 0.0) {
                CHECK(prev_error / error >= 12.0);
            }
            prev_error = error;
        }
    }
    SUBCASE("fine step matches the closed form") {
        const auto out = oracles::rk4_integrate(sigma0, y, d, 5.0, 1e-4);
        CHECK((out.matrix() - evolve(sigma0, sys, bath, 5.0).matrix()).cwiseAbs().maxCoeff() < 1e-6);
    }
    CHECK_THROWS_AS(oracles::rk4_integrate(sigma0, y, d, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("brute-force symplectic spectrum") {
    const auto vacuum = oracles::symplectic_spectrum_bruteforce(CovarianceMatrix<double>::vacuum());
    CHECK(vacuum.nu_minus_hat == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(vacuum.nu_plus_hat == doctest::Approx(1.0).epsilon(1e-14));

    const auto thermal = oracles::symplectic_spectrum_bruteforce(
        squeezed_thermal_covariance(SqueezedThermalSpec(0.0, 3.0, 1.0)));
    CHECK(thermal.nu_minus_hat == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(thermal.nu_plus_hat == doctest::Approx(7.0).epsilon(1e-13));

    const auto squeezed = oracles::symplectic_spectrum_bruteforce(
        squeezed_thermal_covariance(SqueezedThermalSpec(3.0, 3.0, 1.0)));
    CHECK(squeezed.nu_minus_hat == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(squeezed.nu_plus_hat == doctest::Approx(7.0).epsilon(1e-10));
}

TEST_CASE("vectorised Lyapunov solve") {
    const Matrix4<double> y = -Matrix4<double>::Identity();
    const Matrix4<double> d = Matrix4<double>::Identity() / 2;
    CHECK((oracles::lyapunov_solve_vectorized(y, d).matrix() - Matrix4<double>::Identity() / 2).cwiseAbs().maxCoeff() <
          1e-15);

    const SystemParams sys(1.0, 1.0, 1.0);
    const BathParams bath(0.1, 0.0);
    const auto y2 = build_drift(sys, bath).matrix();
    const auto d2 = build_diffusion(sys, bath).matrix();
    const auto s = oracles::lyapunov_solve_vectorized(y2, d2).matrix();
    CHECK((s - Matrix4<double>::Identity() / 2).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((y2 * s + s * y2.transpose() + 2 * d2).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((s - steady_state(sys, bath).matrix()).cwiseAbs().maxCoeff() <= 1e-10);

    CHECK_THROWS(oracles::lyapunov_solve_vectorized<double>(Matrix4<double>::Zero(), d));
}
