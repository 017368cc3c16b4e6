#pragma once

#include <optional>

#include "quartic/regime.hpp"
#include "quartic/sector.hpp"

namespace quartic {

/// The two quadratic integrals: (J1, J2) in regime (i), (I1, I2) in (iii) and
/// (iv), (Re J1, Im J1) in (v).
struct IntegralPair {
    double k1 = 0.0;
    double k2 = 0.0;
};

/// Symmetric matrices F with k = x^T F x on jet states.
struct IntegralForms {
    Eigen::Matrix4d first;
    Eigen::Matrix4d second;
};

/// Throws UnsupportedRegime for Harmonic parameters.
IntegralForms integral_forms(const Parameters& params);
IntegralPair integrals_of_motion(const Parameters& params, const JetState& jet);

/// H(beta) as a symmetric form on jet states. In regime (v) this is
/// -2 Im(e^{i beta} J1); elsewhere cos(beta) k1 + sin(beta) k2.
/// Throws SingularBeta for excluded beta.
Eigen::Matrix4d hamiltonian_form(const Parameters& params, BetaAngle beta);
double hamiltonian_value(const Parameters& params, BetaAngle beta, const JetState& jet);

/// omega1 / omega2 = k / l with gcd(k, l) = 1.
struct RationalRatio {
    int k = 1;
    int l = 1;
};

inline constexpr double kRatioTolerance = 1e-9;

/// Smallest l <= max_denominator with |omega1/omega2 - k/l| < 1e-9 relative.
/// Regime (i) only.
std::optional<RationalRatio> rational_ratio(const Parameters& params, int max_denominator);

/// sin(l phi1 - k phi2) from the instantaneous mode phases; 0 when either
/// mode amplitude is negligible. Regime (i) only.
double third_integral(const Parameters& params, RationalRatio ratio, const JetState& jet);

/// Jet of q + eps (d3q + sign (omega1^2 - omega2^2) dq), with derivatives of
/// order four and five eliminated through the equation of motion. Regime (i) only.
JetState noether_variation(const Parameters& params, const JetState& jet, int sign, double epsilon);

} // namespace quartic
