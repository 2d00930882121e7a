// Gaussian correlation functionals of a two-mode covariance matrix.
//
// Conventions:
//  - Symplectic eigenvalues are reported rescaled (nu_hat = 2 nu, i.e. the
//    symplectic spectrum of 2 sigma) so that the vacuum has nu_hat = 1.
//  - Logarithmic negativity is in bits; discord, classical correlations and
//    mutual information are in nats.
//  - Discord and classical correlations refer to Gaussian measurements on
//    mode 2.
#ifndef GAUSSCORR_MEASURES_HPP
#define GAUSSCORR_MEASURES_HPP

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "gausscorr/core.hpp"

namespace gausscorr {

namespace tolerance {
/// Rescaled symplectic eigenvalues down to 1 - physicality are accepted as
/// physical (and fed to the entropy as exactly 1).
inline constexpr double physicality = 1e-9;
/// Largest negative discriminant that is treated as zero.
inline constexpr double discriminant = 1e-12;
/// Logarithmic negativities below this are reported as 0.
inline constexpr double log_negativity = 1e-10;
/// Negative discord / classical correlation above -this are reported as 0.
inline constexpr double entropic_clamp = 1e-10;
/// Relative half-width, |lhs - rhs| <= branch_tie * max(|lhs|, |rhs|), of the
/// band in which both epsilon branches are evaluated. Both sides shrink like
/// gamma^2 as correlations decay, so an absolute band would swallow the tail.
inline constexpr double branch_tie = 1e-12;
}  // namespace tolerance

/// Local and global symplectic invariants in the normalisation where the
/// vacuum has alpha = beta = delta = 1.
template <typename Scalar = double>
struct SymplecticInvariants {
    Scalar alpha;          ///< 4 det A
    Scalar beta;           ///< 4 det B
    Scalar gamma;          ///< 4 det C
    Scalar delta;          ///< 16 det sigma
    Scalar seralian;       ///< det A + det B + 2 det C
    Scalar seralian_pt;    ///< det A + det B - 2 det C (partial transpose)
    Scalar det_sigma;
    /// delta - alpha beta, evaluated as 16 [(det C)^2 - tr(adj B C^T adj A C)].
    /// Every term is quadratic in C, so it keeps relative accuracy when the
    /// modes are nearly uncorrelated and delta, alpha beta agree to many digits.
    Scalar kappa;

    static SymplecticInvariants from(const CovarianceMatrix<Scalar>& sigma) {
        const Matrix2<Scalar> a = sigma.A();
        const Matrix2<Scalar> b = sigma.B();
        const Matrix2<Scalar> c = sigma.C();
        const Scalar det_a = a.determinant();
        const Scalar det_b = b.determinant();
        const Scalar det_c = c.determinant();
        // Pivoted LU keeps det sigma accurate for strongly squeezed states,
        // where the cofactor expansion cancels catastrophically.
        const Scalar det_s = sigma.matrix().fullPivLu().determinant();
        const Scalar coupling = (adjugate(b) * c.transpose() * adjugate(a) * c).trace();
        return {Scalar(4) * det_a,
                Scalar(4) * det_b,
                Scalar(4) * det_c,
                Scalar(16) * det_s,
                det_a + det_b + Scalar(2) * det_c,
                det_a + det_b - Scalar(2) * det_c,
                det_s,
                Scalar(16) * (det_c * det_c - coupling)};
    }

private:
    static Matrix2<Scalar> adjugate(const Matrix2<Scalar>& m) {
        Matrix2<Scalar> out;
        out << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
        return out;
    }
};

template <typename Scalar = double>
struct SymplecticPair {
    Scalar nu_minus_hat;
    Scalar nu_plus_hat;
};

/// Standard symplectic form, direct sum of [[0, 1], [-1, 0]].
template <typename Scalar = double>
Matrix4<Scalar> symplectic_form() {
    Matrix4<Scalar> omega = Matrix4<Scalar>::Zero();
    omega(0, 1) = omega(2, 3) = Scalar(1);
    omega(1, 0) = omega(3, 2) = Scalar(-1);
    return omega;
}

namespace detail {

/// (nu_+^2 - nu_-^2)^2 = Delta^2 - 4 det sigma, evaluated as tr(K0^2) where K0
/// is the traceless part of K = Omega sigma Omega sigma (spectrum -nu_-^2,
/// -nu_+^2, each twice). Unlike the difference of squares this keeps full
/// relative accuracy when the spectrum is nearly degenerate.
template <typename Scalar>
Scalar spectral_discriminant(const Matrix4<Scalar>& sigma) {
    const Matrix4<Scalar> omega = symplectic_form<Scalar>();
    const Matrix4<Scalar> k = omega * sigma * omega * sigma;
    const Matrix4<Scalar> k0 = k - (k.trace() / Scalar(4)) * Matrix4<Scalar>::Identity();
    return (k0 * k0).trace();
}

template <typename Scalar>
void require_positive_definite(const CovarianceMatrix<Scalar>& sigma) {
    if (sigma.matrix().llt().info() != Eigen::Success) {
        throw InvalidState("covariance matrix is not positive definite");
    }
}

/// Smaller and larger rescaled symplectic eigenvalue from (Delta, det sigma).
template <typename Scalar>
SymplecticPair<Scalar> eigenvalues_from(Scalar seralian, Scalar det_sigma, Scalar discriminant) {
    using std::sqrt;
    if (!(det_sigma > Scalar(0))) {
        throw InvalidState("covariance matrix is not positive definite (det sigma <= 0)");
    }
    if (discriminant < Scalar(0)) {
        if (discriminant < Scalar(-tolerance::discriminant)) {
            throw InvalidState("negative symplectic discriminant");
        }
        discriminant = Scalar(0);
    }
    const Scalar root = sqrt(discriminant);
    const Scalar nu_plus_sq = (seralian + root) / Scalar(2);
    if (!(nu_plus_sq > Scalar(0))) {
        throw InvalidState("non-positive symplectic invariant");
    }
    // nu_-^2 nu_+^2 = det sigma avoids cancellation in (Delta - root) / 2.
    const Scalar nu_minus_sq = det_sigma / nu_plus_sq;
    return {Scalar(2) * sqrt(nu_minus_sq), Scalar(2) * sqrt(nu_plus_sq)};
}

}  // namespace detail

/// Rescaled symplectic eigenvalues (nu_-_hat <= nu_+_hat) of sigma.
/// The state is physical iff nu_-_hat >= 1.
template <typename Scalar = double>
SymplecticPair<Scalar> symplectic_eigenvalues(const CovarianceMatrix<Scalar>& sigma) {
    detail::require_positive_definite(sigma);
    const auto inv = SymplecticInvariants<Scalar>::from(sigma);
    return detail::eigenvalues_from<Scalar>(inv.seralian, inv.det_sigma,
                                            detail::spectral_discriminant<Scalar>(sigma.matrix()));
}

/// Smallest rescaled symplectic eigenvalue of the partial transpose. The state
/// is separable iff this is >= 1.
template <typename Scalar = double>
Scalar ptranspose_eigenvalue(const CovarianceMatrix<Scalar>& sigma) {
    const auto inv = SymplecticInvariants<Scalar>::from(sigma);
    const auto flipped = sigma.partial_transpose();
    return detail::eigenvalues_from<Scalar>(inv.seralian_pt, inv.det_sigma,
                                            detail::spectral_discriminant<Scalar>(flipped.matrix()))
        .nu_minus_hat;
}

template <typename Scalar = double>
bool is_physical(const CovarianceMatrix<Scalar>& sigma) {
    try {
        return symplectic_eigenvalues(sigma).nu_minus_hat >= Scalar(1) - Scalar(tolerance::physicality);
    } catch (const InvalidState&) {
        return false;
    }
}

/// g(sigma) = s - sqrt(s^2 - det sigma), s = (det A + det B)/2 - det C.
///
/// Evaluated in the conjugate form det sigma / (s + sqrt(...)), with the
/// radicand taken as a quarter of the partial-transpose spectral
/// discriminant. g equals the squared smallest partially transposed
/// symplectic eigenvalue (unscaled).
template <typename Scalar = double>
Scalar negativity_g(const CovarianceMatrix<Scalar>& sigma) {
    using std::sqrt;
    detail::require_positive_definite(sigma);
    const auto inv = SymplecticInvariants<Scalar>::from(sigma);
    const Scalar s = inv.seralian_pt / Scalar(2);
    Scalar radicand = detail::spectral_discriminant<Scalar>(sigma.partial_transpose().matrix()) / Scalar(4);
    if (radicand < Scalar(0)) {
        if (radicand < Scalar(-tolerance::discriminant)) {
            throw InvalidState("negative radicand in negativity function");
        }
        radicand = Scalar(0);
    }
    const Scalar denom = s + sqrt(radicand);
    if (!(inv.det_sigma > Scalar(0)) || !(denom > Scalar(0))) {
        throw InvalidState("covariance matrix is not positive definite");
    }
    return inv.det_sigma / denom;
}

/// E_N = max(0, -(1/2) log2(4 g)) in bits. Values below 1e-10 are reported as
/// exactly 0.
template <typename Scalar = double>
Scalar log_negativity(const CovarianceMatrix<Scalar>& sigma) {
    using std::log;
    const Scalar raw = -log(Scalar(4) * negativity_g(sigma)) / (Scalar(2) * log(Scalar(2)));
    return raw < Scalar(tolerance::log_negativity) ? Scalar(0) : raw;
}

/// f(x) = ((x+1)/2) ln((x+1)/2) - ((x-1)/2) ln((x-1)/2), von Neumann entropy
/// of a one-mode thermal state with rescaled symplectic eigenvalue x.
template <typename Scalar = double>
Scalar entropy_f(Scalar x) {
    using std::log;
    using std::log1p;
    if (!(x >= Scalar(1) - Scalar(tolerance::physicality))) {
        throw std::domain_error("entropy_f requires x >= 1");
    }
    if (x <= Scalar(1)) {
        return Scalar(0);
    }
    const Scalar up = (x + Scalar(1)) / Scalar(2);
    const Scalar down = (x - Scalar(1)) / Scalar(2);
    if (down < Scalar(1)) {
        return up * log(up) - down * log(down);
    }
    // Same value without the cancellation between two large terms.
    return log(down) + up * log1p(Scalar(1) / down);
}

enum class EpsilonBranch { First = 1, Second = 2 };

template <typename Scalar = double>
struct EpsilonResult {
    Scalar value;
    EpsilonBranch branch;
    /// Branch condition fell inside the tie band; both branches were evaluated
    /// and the smaller kept.
    bool tie = false;
};

namespace detail {

// Each branch has two algebraically equal forms. The direct one is accurate
// for strongly correlated states; near a product state it cancels, and
// alpha plus a correction built from kappa and gamma is used instead.
template <typename Scalar>
Scalar prefer_correction(const Scalar& alpha, const Scalar& correction, const Scalar& direct) {
    using std::abs;
    return abs(correction) <= alpha / Scalar(2) ? alpha + correction : direct;
}

template <typename Scalar>
Scalar epsilon_first(const SymplecticInvariants<Scalar>& inv) {
    using std::abs;
    using std::sqrt;
    const Scalar& a = inv.alpha;
    const Scalar& g = inv.gamma;
    const Scalar& d = inv.delta;
    const Scalar& k = inv.kappa;
    const Scalar bm1 = inv.beta - Scalar(1);
    auto clamp = [](Scalar x) { return x < Scalar(0) ? Scalar(0) : x; };

    const Scalar inner_small = clamp(g * g + bm1 * k + a * bm1 * bm1);
    const Scalar correction = (Scalar(2) * g * g + bm1 * k + Scalar(2) * abs(g) * sqrt(inner_small)) / (bm1 * bm1);
    const Scalar inner = clamp(g * g + bm1 * (d - a));
    const Scalar direct = (Scalar(2) * g * g + bm1 * (d - a) + Scalar(2) * abs(g) * sqrt(inner)) / (bm1 * bm1);
    return prefer_correction(a, correction, direct);
}

template <typename Scalar>
Scalar epsilon_second(const SymplecticInvariants<Scalar>& inv) {
    using std::sqrt;
    const Scalar& a = inv.alpha;
    const Scalar& b = inv.beta;
    const Scalar& d = inv.delta;
    const Scalar& k = inv.kappa;
    const Scalar g2 = inv.gamma * inv.gamma;
    auto clamp = [](Scalar x) { return x < Scalar(0) ? Scalar(0) : x; };

    const Scalar inner_small = clamp(g2 * g2 + k * k - Scalar(2) * g2 * (Scalar(2) * a * b + k));
    const Scalar correction = (k - g2 - sqrt(inner_small)) / (Scalar(2) * b);
    const Scalar dab = d - a * b;
    const Scalar inner = clamp(g2 * g2 + dab * dab - Scalar(2) * g2 * (d + a * b));
    const Scalar direct = (a * b - g2 + d - sqrt(inner)) / (Scalar(2) * b);
    return prefer_correction(a, correction, direct);
}

}  // namespace detail

/// Minimised conditional determinant epsilon for a Gaussian measurement on
/// mode 2. Branch 1 applies when (delta - alpha beta)^2 <= (beta + 1) gamma^2
/// (alpha + delta); within the relative tie band both are evaluated and the
/// smaller value is taken. When beta = 1 (mode 2 pure) the first branch is 0/0 and the
/// second is reported.
template <typename Scalar = double>
EpsilonResult<Scalar> discord_epsilon(const SymplecticInvariants<Scalar>& inv) {
    using std::abs;
    const Scalar lhs = inv.kappa * inv.kappa;
    const Scalar rhs = (inv.beta + Scalar(1)) * inv.gamma * inv.gamma * (inv.alpha + inv.delta);
    const bool first_defined = abs(inv.beta - Scalar(1)) > Scalar(tolerance::branch_tie);
    const Scalar scale = abs(lhs) > abs(rhs) ? abs(lhs) : abs(rhs);

    EpsilonResult<Scalar> result{};
    if (abs(lhs - rhs) <= Scalar(tolerance::branch_tie) * scale) {
        const Scalar second = detail::epsilon_second(inv);
        result.tie = true;
        if (first_defined) {
            const Scalar first = detail::epsilon_first(inv);
            result = first <= second ? EpsilonResult<Scalar>{first, EpsilonBranch::First, true}
                                     : EpsilonResult<Scalar>{second, EpsilonBranch::Second, true};
        } else {
            result = {second, EpsilonBranch::Second, true};
        }
    } else if (lhs <= rhs && first_defined) {
        result = {detail::epsilon_first(inv), EpsilonBranch::First, false};
    } else {
        result = {detail::epsilon_second(inv), EpsilonBranch::Second, false};
    }
    if (result.value < Scalar(0)) {
        throw InvalidState("negative conditional determinant epsilon");
    }
    return result;
}

namespace detail {

template <typename Scalar>
Scalar clamp_entropic(Scalar value, const char* what) {
    if (value < Scalar(0)) {
        if (value < Scalar(-tolerance::entropic_clamp)) {
            throw InvalidState(std::string(what) + " is negative beyond roundoff");
        }
        return Scalar(0);
    }
    return value;
}

/// Every entropic term used by D, C and I, evaluated once.
template <typename Scalar>
struct EntropyTerms {
    Scalar f_alpha;    ///< f(sqrt alpha)
    Scalar f_beta;     ///< f(sqrt beta)
    Scalar f_minus;    ///< f(nu_-_hat)
    Scalar f_plus;     ///< f(nu_+_hat)
    Scalar f_epsilon;  ///< f(sqrt epsilon)
    SymplecticPair<Scalar> spectrum;
    EpsilonResult<Scalar> epsilon;

    static EntropyTerms from(const CovarianceMatrix<Scalar>& sigma) {
        using std::sqrt;
        const auto inv = SymplecticInvariants<Scalar>::from(sigma);
        const auto spectrum = symplectic_eigenvalues(sigma);
        const auto eps = discord_epsilon(inv);
        if (!(inv.alpha > Scalar(0)) || !(inv.beta > Scalar(0))) {
            throw InvalidState("reduced one-mode states are not positive definite");
        }
        return {entropy_f(sqrt(inv.alpha)),      entropy_f(sqrt(inv.beta)),
                entropy_f(spectrum.nu_minus_hat), entropy_f(spectrum.nu_plus_hat),
                entropy_f(sqrt(eps.value)),       spectrum,
                eps};
    }

    Scalar discord() const { return f_beta - f_minus - f_plus + f_epsilon; }
    Scalar classical() const { return f_alpha - f_epsilon; }
    Scalar mutual() const { return f_alpha + f_beta - f_minus - f_plus; }
};

}  // namespace detail

/// Gaussian discord, measurement on mode 2:
/// D = f(sqrt beta) - f(nu_-_hat) - f(nu_+_hat) + f(sqrt epsilon).
template <typename Scalar = double>
Scalar gaussian_discord(const CovarianceMatrix<Scalar>& sigma) {
    return detail::clamp_entropic(detail::EntropyTerms<Scalar>::from(sigma).discord(), "discord");
}

/// C = f(sqrt alpha) - f(sqrt epsilon).
template <typename Scalar = double>
Scalar classical_correlations(const CovarianceMatrix<Scalar>& sigma) {
    return detail::clamp_entropic(detail::EntropyTerms<Scalar>::from(sigma).classical(),
                                  "classical correlations");
}

/// I = f(sqrt alpha) + f(sqrt beta) - f(nu_-_hat) - f(nu_+_hat).
template <typename Scalar = double>
Scalar mutual_information(const CovarianceMatrix<Scalar>& sigma) {
    return detail::clamp_entropic(detail::EntropyTerms<Scalar>::from(sigma).mutual(),
                                  "mutual information");
}

/// All measures at one time point.
template <typename Scalar = double>
struct CorrelationReport {
    Scalar time{};
    Scalar log_negativity{};
    Scalar discord{};
    Scalar classical_corr{};
    Scalar mutual_info{};
    Scalar nu_minus_hat{};
    Scalar nu_plus_hat{};
    Scalar nu_tilde_minus_hat{};
    bool physical = false;
    EpsilonBranch epsilon_branch = EpsilonBranch::First;
    bool epsilon_tie = false;

    template <typename Other>
    CorrelationReport<Other> cast() const {
        auto to = [](const Scalar& v) { return static_cast<Other>(v); };
        return {to(time),         to(log_negativity), to(discord),
                to(classical_corr), to(mutual_info),  to(nu_minus_hat),
                to(nu_plus_hat),  to(nu_tilde_minus_hat), physical,
                epsilon_branch,   epsilon_tie};
    }
};

/// Evaluates every measure on sigma. Throws InvalidState (or domain_error from
/// the entropy) when sigma is outside the domain of a functional.
template <typename Scalar = double>
CorrelationReport<Scalar> correlation_report(const CovarianceMatrix<Scalar>& sigma, Scalar time = Scalar(0)) {
    const auto terms = detail::EntropyTerms<Scalar>::from(sigma);
    CorrelationReport<Scalar> report;
    report.time = time;
    report.log_negativity = log_negativity(sigma);
    report.discord = detail::clamp_entropic(terms.discord(), "discord");
    report.classical_corr = detail::clamp_entropic(terms.classical(), "classical correlations");
    report.mutual_info = detail::clamp_entropic(terms.mutual(), "mutual information");
    report.nu_minus_hat = terms.spectrum.nu_minus_hat;
    report.nu_plus_hat = terms.spectrum.nu_plus_hat;
    report.nu_tilde_minus_hat = ptranspose_eigenvalue(sigma);
    report.physical = report.nu_minus_hat >= Scalar(1) - Scalar(tolerance::physicality);
    report.epsilon_branch = terms.epsilon.branch;
    report.epsilon_tie = terms.epsilon.tie;
    return report;
}

}  // namespace gausscorr

#endif  // GAUSSCORR_MEASURES_HPP
