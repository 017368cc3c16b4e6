#pragma once

#include <cmath>
#include <complex>
#include <string_view>
#include <variant>

#include <Eigen/Core>

#include "quartic/types.hpp"

namespace quartic {

/// Physical constants of the quartic oscillator
///   L = m/2 dq^2 - m omega^2/2 q^2 - m lambda/2 d2q^2.
struct Parameters {
    double m = 1.0;
    double omega_sq = 1.0;
    double lambda = 0.0;

    /// Throws InvalidParameters unless m > 0, omega_sq > 0 and all are finite.
    void validate() const;
};

enum class Regime {
    OscillatoryDistinct, // (i)   0 < lambda < 1/(4 omega^2)
    Harmonic,            // (ii)  lambda = 0
    Hyperbolic,          // (iii) lambda < 0
    Degenerate,          // (iv)  lambda = 1/(4 omega^2)
    ComplexPair,         // (v)   lambda > 1/(4 omega^2)
};

std::string_view to_string(Regime regime);
std::string_view roman_label(Regime regime);

/// |4 lambda omega^2 - 1| below this classifies as Degenerate.
inline constexpr double kDegeneracyTolerance = 1e-12;
/// Non-degenerate parameters closer than this to the boundary are flagged.
inline constexpr double kNearDegenerateThreshold = 1e-9;
/// Mode amplitudes below this fraction of the total are treated as zero.
inline constexpr double kZeroAmplitude = 1e-13;

Regime classify_regime(const Parameters& params);

/// True for regime (i)/(v) parameters with 0 < |4 lambda omega^2 - 1| < 1e-9,
/// where 1/(omega1^2 - omega2^2) amplifies rounding.
bool near_degenerate(const Parameters& params);

/// Squared mode frequencies. omega1_sq carries the '+' root and is negative in
/// the hyperbolic regime; in the degenerate regime both hold 2 omega^2; in the
/// harmonic regime omega1_sq = omega2_sq = omega^2. The complex regime stores
/// omega0^2 with positive imaginary part (its conjugate is the second root).
struct ModeData {
    Regime regime = Regime::Harmonic;
    double omega1_sq = 0.0;
    double omega2_sq = 0.0;
    std::complex<double> omega0_sq{};

    /// The two roots as complex numbers, valid in every regime.
    std::complex<double> root1() const;
    std::complex<double> root2() const;
};

ModeData mode_frequencies(const Parameters& params);

/// The squared mode frequencies of mode_frequencies evaluated in Scalar.
template <typename Scalar>
struct ModeRoots {
    Regime regime = Regime::Harmonic;
    Scalar omega1_sq{};
    Scalar omega2_sq{};
    std::complex<Scalar> omega0_sq{};

    std::complex<Scalar> root1() const;
    std::complex<Scalar> root2() const;
};

template <typename Scalar>
ModeRoots<Scalar> mode_roots(const Parameters& params, Regime regime)
{
    const Scalar lambda = params.lambda;
    const Scalar w2 = params.omega_sq;
    ModeRoots<Scalar> out;
    out.regime = regime;
    switch (regime) {
    case Regime::Harmonic: out.omega1_sq = out.omega2_sq = w2; break;
    case Regime::Degenerate: out.omega1_sq = out.omega2_sq = Scalar(2) * w2; break;
    case Regime::OscillatoryDistinct:
    case Regime::Hyperbolic: {
        // (1 - sqrt(D)) / (2 lambda) rewritten without cancellation.
        const Scalar root = std::sqrt(Scalar(1) - Scalar(4) * lambda * w2);
        out.omega1_sq = (Scalar(1) + root) / (Scalar(2) * lambda);
        out.omega2_sq = Scalar(2) * w2 / (Scalar(1) + root);
        break;
    }
    case Regime::ComplexPair: {
        const Scalar im = std::sqrt(Scalar(4) * lambda * w2 - Scalar(1));
        out.omega0_sq = {Scalar(1) / (Scalar(2) * lambda), im / (Scalar(2) * lambda)};
        out.omega1_sq = out.omega2_sq = out.omega0_sq.real();
        break;
    }
    }
    return out;
}

template <typename Scalar>
std::complex<Scalar> ModeRoots<Scalar>::root1() const
{
    return regime == Regime::ComplexPair ? omega0_sq : std::complex<Scalar>(omega1_sq);
}

template <typename Scalar>
std::complex<Scalar> ModeRoots<Scalar>::root2() const
{
    return regime == Regime::ComplexPair ? std::conj(omega0_sq) : std::complex<Scalar>(omega2_sq);
}

struct OscillatoryCoeffs {
    double a1 = 0.0, alpha1 = 0.0, a2 = 0.0, alpha2 = 0.0;
};
struct HarmonicCoeffs {
    double a = 0.0, alpha = 0.0;
};
/// q = a_grow e^{|w1| t} + a_decay e^{-|w1| t} + b cos(w2 t + phase)
struct HyperbolicCoeffs {
    double a_grow = 0.0, a_decay = 0.0, b = 0.0, phase = 0.0;
};
/// q = a1 cos(W t + alpha1) + a2 t cos(W t + alpha2),  W^2 = 2 omega^2
struct DegenerateCoeffs {
    double a1 = 0.0, alpha1 = 0.0, a2 = 0.0, alpha2 = 0.0;
};
/// q = Re(grow e^{(tau + i sigma) t}) + Re(decay e^{(-tau + i sigma) t}),
/// where sigma + i tau is the principal square root of omega0^2.
struct ComplexPairCoeffs {
    std::complex<double> grow{}, decay{};
};

using ModeCoeffs =
    std::variant<OscillatoryCoeffs, HarmonicCoeffs, HyperbolicCoeffs, DegenerateCoeffs, ComplexPairCoeffs>;

Regime regime_of(const ModeCoeffs& coeffs);

/// Derivatives 0..orders-1 at time t of the four real basis solutions, one
/// column per basis function. Columns 2 and 3 vanish in the harmonic regime.
Eigen::Matrix<double, Eigen::Dynamic, 4> mode_basis(const ModeData& modes, double t, int orders = 4);

/// Weights of the coefficients on the mode_basis columns.
Eigen::Vector4d basis_weights(const ModeCoeffs& coeffs);
ModeCoeffs coeffs_from_weights(Regime regime, const Eigen::Vector4d& weights);

JetState exact_solution(const Parameters& params, const ModeCoeffs& coeffs, double t);

/// q and its first `orders - 1` derivatives along the closed-form solution.
Eigen::VectorXd solution_derivatives(const Parameters& params, const ModeCoeffs& coeffs, double t, int orders);

/// Inverts the mode map at t = 0. In the harmonic regime only (q, dq) are used.
ModeCoeffs fit_mode_coefficients(const Parameters& params, const JetState& jet);

/// lambda d4q + d2q + omega^2 q
double el_residual(const Parameters& params, const JetState& jet, double d4q);

/// Generator G of the jet flow, d/dt x = G x. For lambda != 0 this is the
/// companion matrix of the fourth-order equation; in the harmonic regime it
/// evolves (q, dq) and (d2q, d3q) as two copies of the oscillator.
Eigen::Matrix4d jet_generator(const Parameters& params);

} // namespace quartic
