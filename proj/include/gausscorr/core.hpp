// Domain types for two bosonic modes in a common thermal bath.
//
// Units: hbar = k_B = 1. Phase-space ordering is (x, p_x, y, p_y) throughout;
// the vacuum covariance matrix is I/2.
#ifndef GAUSSCORR_CORE_HPP
#define GAUSSCORR_CORE_HPP

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gausscorr {

template <typename Scalar>
using Matrix2 = Eigen::Matrix<Scalar, 2, 2>;
template <typename Scalar>
using Matrix4 = Eigen::Matrix<Scalar, 4, 4>;

/// Raised when a covariance matrix violates the uncertainty principle or is
/// otherwise outside the domain of a Gaussian correlation functional.
class InvalidState : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

namespace detail {

inline double require_finite(double value, const char* name) {
    if (!std::isfinite(value)) {
        throw std::invalid_argument(std::string(name) + " must be finite");
    }
    return value;
}

inline double require_positive(double value, const char* name) {
    require_finite(value, name);
    if (!(value > 0.0)) {
        throw std::invalid_argument(std::string(name) + " must be > 0");
    }
    return value;
}

inline double require_non_negative(double value, const char* name) {
    require_finite(value, name);
    if (value < 0.0) {
        throw std::invalid_argument(std::string(name) + " must be >= 0");
    }
    return value;
}

}  // namespace detail

/// Two uncoupled oscillators of identical mass and (generally different)
/// angular frequencies.
class SystemParams {
public:
    SystemParams(double mass, double omega1, double omega2)
        : mass_(detail::require_positive(mass, "mass")),
          omega1_(detail::require_positive(omega1, "omega1")),
          omega2_(detail::require_positive(omega2, "omega2")) {}

    SystemParams(double omega1, double omega2) : SystemParams(1.0, omega1, omega2) {}

    double mass() const { return mass_; }
    double omega1() const { return omega1_; }
    double omega2() const { return omega2_; }
    /// Frequency of mode 0 or 1.
    double omega(int mode) const { return mode == 0 ? omega1_ : omega2_; }

private:
    double mass_;
    double omega1_;
    double omega2_;
};

/// Dissipation constant and bath temperature. T = 0 is allowed.
class BathParams {
public:
    BathParams(double lambda, double temperature)
        : lambda_(detail::require_positive(lambda, "lambda")),
          temperature_(detail::require_non_negative(temperature, "temperature")) {}

    double lambda() const { return lambda_; }
    double temperature() const { return temperature_; }

private:
    double lambda_;
    double temperature_;
};

/// Two-mode squeezing r applied to a thermal product state with mean
/// occupations n1, n2.
class SqueezedThermalSpec {
public:
    SqueezedThermalSpec(double r, double n1, double n2)
        : r_(detail::require_non_negative(r, "r")),
          n1_(detail::require_non_negative(n1, "n1")),
          n2_(detail::require_non_negative(n2, "n2")) {}

    double r() const { return r_; }
    double n1() const { return n1_; }
    double n2() const { return n2_; }

private:
    double r_;
    double n1_;
    double n2_;
};

/// Symmetric 4x4 covariance matrix in the (x, p_x, y, p_y) basis.
///
/// Construction checks symmetry (relative tolerance 1e-12) and finiteness.
/// Physicality is a property of the state checked by the measures layer, so a
/// CovarianceMatrix may hold an unphysical matrix.
template <typename Scalar = double>
class CovarianceMatrix {
public:
    using MatrixType = Matrix4<Scalar>;

    explicit CovarianceMatrix(const MatrixType& entries) : entries_(entries) {
        using std::abs;
        Scalar scale(0);
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                const Scalar v = entries_(i, j);
                if (!(abs(v) < std::numeric_limits<Scalar>::infinity())) {
                    throw std::invalid_argument("covariance matrix entries must be finite");
                }
                scale = std::max<Scalar>(scale, abs(v));
            }
        }
        const Scalar tolerance = Scalar(1e-12) * std::max<Scalar>(scale, Scalar(1));
        for (int i = 0; i < 4; ++i) {
            for (int j = i + 1; j < 4; ++j) {
                if (abs(entries_(i, j) - entries_(j, i)) > tolerance) {
                    throw std::invalid_argument("covariance matrix must be symmetric");
                }
            }
        }
    }

    static CovarianceMatrix vacuum() { return CovarianceMatrix(MatrixType::Identity() / Scalar(2)); }

    const MatrixType& matrix() const { return entries_; }
    Scalar operator()(int i, int j) const { return entries_(i, j); }

    /// Mode-1 block.
    Matrix2<Scalar> A() const { return entries_.template block<2, 2>(0, 0); }
    /// Mode-2 block.
    Matrix2<Scalar> B() const { return entries_.template block<2, 2>(2, 2); }
    /// Cross-correlation block (rows: mode 1, columns: mode 2).
    Matrix2<Scalar> C() const { return entries_.template block<2, 2>(0, 2); }

    /// Time reversal of mode 2 (p_y -> -p_y).
    CovarianceMatrix partial_transpose() const {
        MatrixType flipped = entries_;
        flipped.row(3) *= Scalar(-1);
        flipped.col(3) *= Scalar(-1);
        return CovarianceMatrix(flipped);
    }

    template <typename Other>
    CovarianceMatrix<Other> cast() const {
        return CovarianceMatrix<Other>(entries_.template cast<Other>());
    }

private:
    MatrixType entries_;
};

/// Covariance matrix of the two-mode squeezed thermal state.
///
/// Entries are a = n1 cosh^2 r + n2 sinh^2 r + cosh(2r)/2, b likewise with
/// n1 <-> n2, c = (n1 + n2 + 1) sinh(2r)/2, laid out as
/// [[a,0,c,0],[0,a,0,-c],[c,0,b,0],[0,-c,0,b]] so that r = n1 = n2 = 0 is the
/// vacuum I/2.
template <typename Scalar = double>
CovarianceMatrix<Scalar> squeezed_thermal_covariance(const SqueezedThermalSpec& spec) {
    using std::cosh;
    using std::sinh;
    const Scalar r(spec.r());
    const Scalar n1(spec.n1());
    const Scalar n2(spec.n2());
    const Scalar ch2 = cosh(r) * cosh(r);
    const Scalar sh2 = sinh(r) * sinh(r);
    const Scalar half_cosh2r = cosh(Scalar(2) * r) / Scalar(2);

    const Scalar a = n1 * ch2 + n2 * sh2 + half_cosh2r;
    const Scalar b = n1 * sh2 + n2 * ch2 + half_cosh2r;
    const Scalar c = (n1 + n2 + Scalar(1)) * sinh(Scalar(2) * r) / Scalar(2);

    Matrix4<Scalar> m = Matrix4<Scalar>::Zero();
    m(0, 0) = a;
    m(1, 1) = a;
    m(2, 2) = b;
    m(3, 3) = b;
    m(0, 2) = m(2, 0) = c;
    m(1, 3) = m(3, 1) = -c;
    return CovarianceMatrix<Scalar>(m);
}

/// Squeezing above which the squeezed thermal state with occupations n1, n2
/// is entangled: cosh^2 r_s = (n1 + 1)(n2 + 1) / (n1 + n2 + 1).
inline double separability_threshold(double n1, double n2) {
    detail::require_non_negative(n1, "n1");
    detail::require_non_negative(n2, "n2");
    const double cosh_sq = (n1 + 1.0) * (n2 + 1.0) / (n1 + n2 + 1.0);
    return std::acosh(std::sqrt(cosh_sq));
}

}  // namespace gausscorr

#endif  // GAUSSCORR_CORE_HPP
