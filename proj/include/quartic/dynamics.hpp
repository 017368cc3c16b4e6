#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quartic/darboux.hpp"

namespace quartic {

enum class Method { RK4, Leapfrog, ImplicitMidpoint, Exact };

std::string_view to_string(Method method);
/// Accepts "rk4", "leapfrog", "implicit-midpoint", "exact"; throws InvalidArgument otherwise.
Method parse_method(std::string_view name);

enum class StateKind { Jet, Canonical };

struct Trajectory {
    std::vector<double> times;
    std::vector<Eigen::Vector4d> states;
    StateKind kind = StateKind::Jet;
    Method method = Method::RK4;
    /// Step actually taken: t_end divided by a whole number of steps.
    double dt = 0.0;
    double wall_seconds = 0.0;
};

struct IntegrationOptions {
    double t_end = 1.0;
    double dt = 1e-3;
    /// Store every k-th step; the final step is always stored.
    int sample_every = 10;
};

/// Phi(dt) with x(t + dt) = Phi(dt) x(t) along the equation of motion, built
/// from the closed-form mode functions.
Eigen::Matrix4d exact_propagator(const Parameters& params, double dt);

/// Jet-space evolution: RK4 on the first-order system, or the exact
/// propagator evaluated at each sample time. Leapfrog and ImplicitMidpoint
/// are canonical-only and throw IncompatibleMethod.
Trajectory integrate_jet(const Parameters& params, const JetState& jet0, const IntegrationOptions& options,
                         Method method = Method::RK4);

/// Hamiltonian flow of H(beta) in Darboux coordinates. Leapfrog requires
/// the canonical Hamiltonian to have no q-p cross terms.
Trajectory integrate_canonical(const Parameters& params, BetaAngle beta, const CanonicalState& canon0,
                               const IntegrationOptions& options, Method method = Method::Leapfrog);

/// exp(t J 2K) for the canonical Hamiltonian form K.
Eigen::Matrix4d canonical_flow(const Parameters& params, BetaAngle beta, double t);

struct CrossCheckOptions {
    IntegrationOptions integration;
    Method jet_method = Method::RK4;
    Method canonical_method = Method::RK4;
};

/// Max over samples of the sup-norm distance between the jet trajectory and
/// the canonical trajectory mapped back through from_canonical.
double cross_check(const Parameters& params, BetaAngle beta, const JetState& jet0, const CrossCheckOptions& options);

/// Drift of one conserved quantity along a trajectory. scaled_drift divides
/// |I(t) - I(0)| by max(|I(0)|, |x|^T |F| |x|), the size of the terms that
/// cancel in I; relative_drift divides by |I(0)| alone.
struct InvariantDrift {
    std::string name;
    std::vector<double> series;
    double max_scaled_drift = 0.0;
    double max_relative_drift = 0.0;
    double max_absolute_drift = 0.0;
};

struct DriftReport {
    std::vector<InvariantDrift> invariants;
    std::optional<RationalRatio> ratio;
    double wall_seconds = 0.0;

    const InvariantDrift& find(std::string_view name) const;
    double worst_scaled_drift() const;
};

/// Largest denominator searched when detecting a superintegrable ratio.
inline constexpr int kRatioSearchDenominator = 12;

/// Evaluates k1, k2 and H(beta) (plus the third integral C for rational
/// regime-(i) ratios) along the trajectory. Canonical trajectories are mapped
/// back to jet space first. C drift is absolute.
DriftReport drift_report(const Parameters& params, BetaAngle beta, const Trajectory& trajectory);

} // namespace quartic
