#pragma once

#include <complex>

#include "quartic/poisson.hpp"

namespace quartic {

/// Linear Darboux chart for one (regime, beta). forward maps jet states to
/// (q1, p1, q2, p2); hamiltonian_form K gives H = x^T K x on canonical states.
struct DarbouxMap {
    Eigen::Matrix4d forward = Eigen::Matrix4d::Identity();
    Eigen::Matrix4d inverse = Eigen::Matrix4d::Identity();
    /// delta in regimes (i) and (iii); 1 elsewhere.
    double delta = 1.0;
    /// epsilon in regime (v); 0 elsewhere.
    std::complex<double> epsilon{};
    Sector sector;
    Eigen::Matrix4d hamiltonian_form = Eigen::Matrix4d::Zero();
};

/// Throws SingularBeta for excluded beta and UnsupportedRegime for Harmonic.
DarbouxMap darboux_map(const Parameters& params, BetaAngle beta);

CanonicalState to_canonical(const Parameters& params, BetaAngle beta, const JetState& jet);
JetState from_canonical(const Parameters& params, BetaAngle beta, const CanonicalState& canon);
double canonical_hamiltonian(const Parameters& params, BetaAngle beta, const CanonicalState& canon);

inline constexpr double kCanonicityTolerance = 1e-12;

/// The push-forward is evaluated in long double from the same chart formulas.
struct CanonicityReport {
    Eigen::Matrix4d pushed_forward;
    /// max |M Pi M^T - J| entrywise.
    double residual = 0.0;
    /// max |forward * inverse - I| entrywise.
    double inverse_residual = 0.0;
    bool canonical = false;
};

CanonicityReport verify_canonicity(const Parameters& params, BetaAngle beta);

} // namespace quartic
