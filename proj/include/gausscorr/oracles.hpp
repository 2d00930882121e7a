// Independent numerical routes used to verify the closed-form production
// path. Nothing under include/gausscorr other than this header depends on
// these; they are linked into the test and verification binaries only.
#ifndef GAUSSCORR_ORACLES_HPP
#define GAUSSCORR_ORACLES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "gausscorr/core.hpp"
#include "gausscorr/measures.hpp"

namespace gausscorr::oracles {

/// Matrix exponential by scaling and squaring around a truncated Taylor
/// series.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime> expm_generic(
    const Eigen::MatrixBase<Derived>& m) {
    using Scalar = typename Derived::Scalar;
    using Result = Eigen::Matrix<Scalar, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime>;
    using std::ceil;
    using std::log2;
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("expm_generic requires a square matrix");
    }

    // Scale so that the 1-norm is at most 1/2.
    const Scalar norm = m.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > Scalar(0.5)) {
        squarings = static_cast<int>(static_cast<double>(ceil(log2(norm / Scalar(0.5)))));
    }
    Result scaled = m;
    for (int i = 0; i < squarings; ++i) {
        scaled /= Scalar(2);
    }

    const Result identity = Result::Identity(m.rows(), m.cols());
    Result sum = identity;
    Result term = identity;
    const Scalar eps = std::numeric_limits<Scalar>::epsilon();
    for (int k = 1; k <= 60; ++k) {
        term = (term * scaled) / Scalar(k);
        sum += term;
        if (term.cwiseAbs().maxCoeff() <= eps * sum.cwiseAbs().maxCoeff()) {
            break;
        }
    }
    for (int i = 0; i < squarings; ++i) {
        sum = (sum * sum).eval();
    }
    return sum;
}

/// Classical fourth-order Runge-Kutta on d sigma/dt = Y sigma + sigma Y^T + 2 D
/// with n = ceil(t / step) equal steps.
template <typename Scalar = double>
CovarianceMatrix<Scalar> rk4_integrate(const CovarianceMatrix<Scalar>& sigma0, const Matrix4<Scalar>& y,
                                       const Matrix4<Scalar>& d, Scalar t, Scalar step) {
    using std::ceil;
    if (!(step > Scalar(0)) || !(t >= Scalar(0))) {
        throw std::invalid_argument("rk4_integrate requires step > 0 and t >= 0");
    }
    const Matrix4<Scalar> yt = y.transpose();
    const Matrix4<Scalar> source = Scalar(2) * d;
    auto rhs = [&](const Matrix4<Scalar>& s) -> Matrix4<Scalar> { return y * s + s * yt + source; };

    const long steps = static_cast<long>(static_cast<double>(ceil(t / step)));
    Matrix4<Scalar> s = sigma0.matrix();
    if (steps == 0) {
        return sigma0;
    }
    const Scalar h = t / Scalar(steps);
    for (long i = 0; i < steps; ++i) {
        const Matrix4<Scalar> k1 = rhs(s);
        const Matrix4<Scalar> k2 = rhs(s + (h / Scalar(2)) * k1);
        const Matrix4<Scalar> k3 = rhs(s + (h / Scalar(2)) * k2);
        const Matrix4<Scalar> k4 = rhs(s + h * k3);
        s += (h / Scalar(6)) * (k1 + Scalar(2) * k2 + Scalar(2) * k3 + k4);
    }
    return CovarianceMatrix<Scalar>((s + s.transpose().eval()) / Scalar(2));
}

/// Symplectic spectrum as the moduli of the eigenvalues of i Omega (2 sigma),
/// which come in equal pairs; returns the two distinct values sorted.
template <typename Scalar = double>
SymplecticPair<Scalar> symplectic_spectrum_bruteforce(const CovarianceMatrix<Scalar>& sigma) {
    using std::abs;
    const Matrix4<Scalar> generator = symplectic_form<Scalar>() * (Scalar(2) * sigma.matrix());
    Eigen::EigenSolver<Matrix4<Scalar>> solver(generator, false);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigenvalue iteration did not converge");
    }
    std::array<Scalar, 4> moduli;
    for (int i = 0; i < 4; ++i) {
        moduli[i] = abs(solver.eigenvalues()(i));
    }
    std::sort(moduli.begin(), moduli.end());
    return {(moduli[0] + moduli[1]) / Scalar(2), (moduli[2] + moduli[3]) / Scalar(2)};
}

/// Solves Y S + S Y^T = -2 D through the Kronecker-vectorised 16x16 system
/// (I (x) Y + Y (x) I) vec S = -2 vec D.
template <typename Scalar = double>
CovarianceMatrix<Scalar> lyapunov_solve_vectorized(const Matrix4<Scalar>& y, const Matrix4<Scalar>& d) {
    using Big = Eigen::Matrix<Scalar, 16, 16>;
    Big op = Big::Zero();
    const Matrix4<Scalar> id = Matrix4<Scalar>::Identity();
    // Column-major vec: vec(Y S) = (I (x) Y) vec S, vec(S Y^T) = (Y (x) I) vec S.
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            op.template block<4, 4>(4 * i, 4 * j) += id(i, j) * y;
            op.template block<4, 4>(4 * i, 4 * j) += y(i, j) * id;
        }
    }
    Eigen::Matrix<Scalar, 16, 1> rhs;
    for (int j = 0; j < 4; ++j) {
        for (int i = 0; i < 4; ++i) {
            rhs(4 * j + i) = Scalar(-2) * d(i, j);
        }
    }
    const auto qr = op.colPivHouseholderQr();
    if (qr.rank() < 16) {
        throw std::runtime_error("vectorised Lyapunov operator is singular");
    }
    const Eigen::Matrix<Scalar, 16, 1> vec = qr.solve(rhs);
    Matrix4<Scalar> s;
    for (int j = 0; j < 4; ++j) {
        for (int i = 0; i < 4; ++i) {
            s(i, j) = vec(4 * j + i);
        }
    }
    return CovarianceMatrix<Scalar>((s + s.transpose().eval()) / Scalar(2));
}

}  // namespace gausscorr::oracles

#endif  // GAUSSCORR_ORACLES_HPP
