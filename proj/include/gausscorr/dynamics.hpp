// Exact Gaussian dynamics of two independent oscillators in a common
// Markovian thermal bath:
//
//   d sigma / dt = Y sigma + sigma Y^T + 2 D
//   sigma(t)     = M(t) [sigma(0) - sigma(inf)] M(t)^T + sigma(inf),  M(t) = exp(Y t)
#ifndef GAUSSCORR_DYNAMICS_HPP
#define GAUSSCORR_DYNAMICS_HPP

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "gausscorr/core.hpp"

namespace gausscorr {

/// Drift matrix: block diagonal, block i = [[-lambda, 1/m], [-m w_i^2, -lambda]].
template <typename Scalar = double>
class DriftMatrix {
public:
    explicit DriftMatrix(const Matrix4<Scalar>& entries) : entries_(entries) {}
    const Matrix4<Scalar>& matrix() const { return entries_; }

    /// Routh-Hurwitz on each diagonal block (the off-diagonal blocks vanish).
    bool is_hurwitz() const {
        for (int k = 0; k < 4; k += 2) {
            const Matrix2<Scalar> block = entries_.template block<2, 2>(k, k);
            if (!(block.trace() < Scalar(0) && block.determinant() > Scalar(0))) {
                return false;
            }
        }
        return entries_.template block<2, 2>(0, 2).isZero(Scalar(0)) &&
               entries_.template block<2, 2>(2, 0).isZero(Scalar(0));
    }

private:
    Matrix4<Scalar> entries_;
};

/// Diffusion matrix diag(D_xx, D_pxpx, D_yy, D_pypy).
template <typename Scalar = double>
class DiffusionMatrix {
public:
    explicit DiffusionMatrix(const Matrix4<Scalar>& entries) : entries_(entries) {}
    const Matrix4<Scalar>& matrix() const { return entries_; }

private:
    Matrix4<Scalar> entries_;
};

/// coth(omega / 2T), equal to 1 at T = 0 (and numerically saturated for
/// omega >> T).
template <typename Scalar = double>
Scalar thermal_factor(double omega, double temperature) {
    if (temperature == 0.0) {
        return Scalar(1);
    }
    using std::tanh;
    return Scalar(1) / tanh(Scalar(omega) / (Scalar(2) * Scalar(temperature)));
}

template <typename Scalar = double>
DriftMatrix<Scalar> build_drift(const SystemParams& sys, const BathParams& bath) {
    const Scalar m(sys.mass());
    const Scalar lambda(bath.lambda());
    Matrix4<Scalar> y = Matrix4<Scalar>::Zero();
    for (int mode = 0; mode < 2; ++mode) {
        const int k = 2 * mode;
        const Scalar w(sys.omega(mode));
        y(k, k) = -lambda;
        y(k, k + 1) = Scalar(1) / m;
        y(k + 1, k) = -m * w * w;
        y(k + 1, k + 1) = -lambda;
    }
    return DriftMatrix<Scalar>(y);
}

/// Thermal diffusion coefficients making the Gibbs state stationary:
/// m w D_xx = D_pp / (m w) = (lambda/2) coth(w / 2T); all cross terms vanish.
template <typename Scalar = double>
DiffusionMatrix<Scalar> build_diffusion(const SystemParams& sys, const BathParams& bath) {
    const Scalar m(sys.mass());
    const Scalar half_lambda = Scalar(bath.lambda()) / Scalar(2);
    Matrix4<Scalar> d = Matrix4<Scalar>::Zero();
    for (int mode = 0; mode < 2; ++mode) {
        const int k = 2 * mode;
        const Scalar w(sys.omega(mode));
        const Scalar coth = thermal_factor<Scalar>(sys.omega(mode), bath.temperature());
        d(k, k) = half_lambda * coth / (m * w);
        d(k + 1, k + 1) = half_lambda * m * w * coth;
    }
    return DiffusionMatrix<Scalar>(d);
}

/// Closed-form exp(Y t). Block i is
/// e^{-lambda t} [[cos w t, sin(w t)/(m w)], [-m w sin w t, cos w t]].
template <typename Scalar = double>
Matrix4<Scalar> propagator(const SystemParams& sys, const BathParams& bath, Scalar t) {
    if (!(t >= Scalar(0))) {
        throw std::invalid_argument("propagator requires t >= 0");
    }
    using std::cos;
    using std::exp;
    using std::sin;
    const Scalar m(sys.mass());
    const Scalar decay = exp(-Scalar(bath.lambda()) * t);
    Matrix4<Scalar> out = Matrix4<Scalar>::Zero();
    for (int mode = 0; mode < 2; ++mode) {
        const int k = 2 * mode;
        const Scalar w(sys.omega(mode));
        const Scalar c = cos(w * t);
        const Scalar s = sin(w * t);
        out(k, k) = decay * c;
        out(k, k + 1) = decay * s / (m * w);
        out(k + 1, k) = -decay * m * w * s;
        out(k + 1, k + 1) = decay * c;
    }
    return out;
}

/// Solves Y S + S Y^T = -2 D for symmetric S.
///
/// Only the 10 independent entries of S are unknowns; the corresponding 10
/// equations (upper triangle) form a dense linear system solved by full-pivot
/// LU.
template <typename Scalar = double>
CovarianceMatrix<Scalar> solve_symmetric_lyapunov(const Matrix4<Scalar>& y, const Matrix4<Scalar>& d) {
    constexpr int n = 4;
    constexpr int unknowns = n * (n + 1) / 2;
    auto index = [](int i, int j) {
        if (i > j) {
            std::swap(i, j);
        }
        // Row-major upper-triangle numbering.
        return i * n - i * (i - 1) / 2 + (j - i);
    };

    Eigen::Matrix<Scalar, unknowns, unknowns> lhs = Eigen::Matrix<Scalar, unknowns, unknowns>::Zero();
    Eigen::Matrix<Scalar, unknowns, 1> rhs;
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const int row = index(i, j);
            // (Y S)_ij + (S Y^T)_ij = sum_k Y_ik S_kj + S_ik Y_jk
            for (int k = 0; k < n; ++k) {
                lhs(row, index(k, j)) += y(i, k);
                lhs(row, index(i, k)) += y(j, k);
            }
            rhs(row) = Scalar(-2) * d(i, j);
        }
    }

    const auto lu = lhs.fullPivLu();
    if (!lu.isInvertible()) {
        throw std::runtime_error("Lyapunov system is singular");
    }
    const Eigen::Matrix<Scalar, unknowns, 1> solution = lu.solve(rhs);

    Matrix4<Scalar> s;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            s(i, j) = solution(index(i, j));
        }
    }
    return CovarianceMatrix<Scalar>(s);
}

/// Asymptotic state sigma(inf); for the thermal diffusion coefficients this is
/// the Gibbs product state.
template <typename Scalar = double>
CovarianceMatrix<Scalar> steady_state(const SystemParams& sys, const BathParams& bath) {
    const auto drift = build_drift<Scalar>(sys, bath);
    if (!drift.is_hurwitz()) {
        throw std::runtime_error("drift matrix is not Hurwitz; no steady state");
    }
    return solve_symmetric_lyapunov<Scalar>(drift.matrix(), build_diffusion<Scalar>(sys, bath).matrix());
}

/// Propagates covariance matrices for one (system, bath) pair. Holds sigma(inf)
/// so that repeated evaluation along a trajectory solves the Lyapunov system
/// once.
template <typename Scalar = double>
class Evolver {
public:
    Evolver(const SystemParams& sys, const BathParams& bath)
        : sys_(sys), bath_(bath), asymptotic_(steady_state<Scalar>(sys, bath)) {}

    const SystemParams& system() const { return sys_; }
    const BathParams& bath() const { return bath_; }
    const CovarianceMatrix<Scalar>& asymptotic() const { return asymptotic_; }

    CovarianceMatrix<Scalar> operator()(const CovarianceMatrix<Scalar>& sigma0, Scalar t) const {
        const Matrix4<Scalar> m = propagator<Scalar>(sys_, bath_, t);
        const Matrix4<Scalar> excess = sigma0.matrix() - asymptotic_.matrix();
        Matrix4<Scalar> out = m * excess * m.transpose() + asymptotic_.matrix();
        out = (out + out.transpose().eval()) / Scalar(2);
        return CovarianceMatrix<Scalar>(out);
    }

private:
    SystemParams sys_;
    BathParams bath_;
    CovarianceMatrix<Scalar> asymptotic_;
};

/// Exact covariance matrix at time t.
template <typename Scalar = double>
CovarianceMatrix<Scalar> evolve(const CovarianceMatrix<Scalar>& sigma0, const SystemParams& sys,
                                const BathParams& bath, Scalar t) {
    return Evolver<Scalar>(sys, bath)(sigma0, t);
}

}  // namespace gausscorr

#endif  // GAUSSCORR_DYNAMICS_HPP
