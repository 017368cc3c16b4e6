#include "quartic/regime.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/LU>
#include <Eigen/SVD>

namespace quartic {

namespace {

constexpr double kMaxModeCondition = 1e13;

double boundary_offset(const Parameters& p)
{
    return 4.0 * p.lambda * p.omega_sq - 1.0;
}

// Phases live in [-pi, pi).
double canonical_phase(double phase)
{
    double out = std::remainder(phase, 2.0 * std::numbers::pi);
    if (out >= std::numbers::pi) {
        out -= 2.0 * std::numbers::pi;
    }
    return out;
}

// Amplitude/phase of w_cos cos(x) + w_sin sin(x) = A cos(x + alpha).
std::pair<double, double> amplitude_phase(double w_cos, double w_sin)
{
    return {std::hypot(w_cos, w_sin), canonical_phase(std::atan2(-w_sin, w_cos))};
}

// Row n holds the n-th derivative of e^{s t} (or of t e^{s t} when secular).
Eigen::VectorXcd exp_jet(std::complex<double> s, double t, int orders, bool secular)
{
    Eigen::VectorXcd out(orders);
    const std::complex<double> e = std::exp(s * t);
    std::complex<double> s_pow = 1.0;      // s^n
    std::complex<double> s_pow_prev = 0.0; // s^(n-1)
    for (int n = 0; n < orders; ++n) {
        out(n) = secular ? (s_pow * t + double(n) * s_pow_prev) * e : s_pow * e;
        s_pow_prev = s_pow;
        s_pow *= s;
    }
    return out;
}

void check_tag(const Parameters& params, const ModeCoeffs& coeffs)
{
    const Regime expected = classify_regime(params);
    if (regime_of(coeffs) != expected) {
        throw InvalidArgument("mode coefficients tagged " + std::string(to_string(regime_of(coeffs)))
                              + " do not match the " + std::string(to_string(expected)) + " regime");
    }
}

} // namespace

void Parameters::validate() const
{
    if (!std::isfinite(m) || !std::isfinite(omega_sq) || !std::isfinite(lambda)) {
        throw InvalidParameters("parameters must be finite");
    }
    if (m <= 0.0) {
        throw InvalidParameters("mass must be positive");
    }
    if (omega_sq <= 0.0) {
        throw InvalidParameters("omega^2 must be positive");
    }
}

std::string_view to_string(Regime regime)
{
    switch (regime) {
    case Regime::OscillatoryDistinct: return "oscillatory-distinct";
    case Regime::Harmonic: return "harmonic";
    case Regime::Hyperbolic: return "hyperbolic";
    case Regime::Degenerate: return "degenerate";
    case Regime::ComplexPair: return "complex-pair";
    }
    return "unknown";
}

std::string_view roman_label(Regime regime)
{
    switch (regime) {
    case Regime::OscillatoryDistinct: return "i";
    case Regime::Harmonic: return "ii";
    case Regime::Hyperbolic: return "iii";
    case Regime::Degenerate: return "iv";
    case Regime::ComplexPair: return "v";
    }
    return "?";
}

Regime classify_regime(const Parameters& params)
{
    params.validate();
    if (params.lambda == 0.0) {
        return Regime::Harmonic;
    }
    if (params.lambda < 0.0) {
        return Regime::Hyperbolic;
    }
    const double offset = boundary_offset(params);
    if (std::abs(offset) < kDegeneracyTolerance) {
        return Regime::Degenerate;
    }
    return offset < 0.0 ? Regime::OscillatoryDistinct : Regime::ComplexPair;
}

bool near_degenerate(const Parameters& params)
{
    const Regime regime = classify_regime(params);
    if (regime != Regime::OscillatoryDistinct && regime != Regime::ComplexPair) {
        return false;
    }
    return std::abs(boundary_offset(params)) < kNearDegenerateThreshold;
}

std::complex<double> ModeData::root1() const
{
    return regime == Regime::ComplexPair ? omega0_sq : std::complex<double>(omega1_sq);
}

std::complex<double> ModeData::root2() const
{
    return regime == Regime::ComplexPair ? std::conj(omega0_sq) : std::complex<double>(omega2_sq);
}

ModeData mode_frequencies(const Parameters& params)
{
    const ModeRoots<double> roots = mode_roots<double>(params, classify_regime(params));
    ModeData out;
    out.regime = roots.regime;
    out.omega1_sq = roots.omega1_sq;
    out.omega2_sq = roots.omega2_sq;
    out.omega0_sq = roots.omega0_sq;
    return out;
}

Regime regime_of(const ModeCoeffs& coeffs)
{
    switch (coeffs.index()) {
    case 0: return Regime::OscillatoryDistinct;
    case 1: return Regime::Harmonic;
    case 2: return Regime::Hyperbolic;
    case 3: return Regime::Degenerate;
    default: return Regime::ComplexPair;
    }
}

Eigen::Matrix<double, Eigen::Dynamic, 4> mode_basis(const ModeData& modes, double t, int orders)
{
    if (orders < 1) {
        throw InvalidArgument("mode_basis needs at least one derivative order");
    }
    Eigen::Matrix<double, Eigen::Dynamic, 4> basis(orders, 4);
    basis.setZero();
    auto put_pair = [&](int col, const Eigen::VectorXcd& jet) {
        basis.col(col) = jet.real();
        basis.col(col + 1) = jet.imag();
    };

    switch (modes.regime) {
    case Regime::Harmonic:
        put_pair(0, exp_jet({0.0, std::sqrt(modes.omega1_sq)}, t, orders, false));
        break;
    case Regime::OscillatoryDistinct:
        put_pair(0, exp_jet({0.0, std::sqrt(modes.omega1_sq)}, t, orders, false));
        put_pair(2, exp_jet({0.0, std::sqrt(modes.omega2_sq)}, t, orders, false));
        break;
    case Regime::Hyperbolic: {
        const double kappa = std::sqrt(-modes.omega1_sq);
        basis.col(0) = exp_jet(kappa, t, orders, false).real();
        basis.col(1) = exp_jet(-kappa, t, orders, false).real();
        put_pair(2, exp_jet({0.0, std::sqrt(modes.omega2_sq)}, t, orders, false));
        break;
    }
    case Regime::Degenerate: {
        const std::complex<double> s{0.0, std::sqrt(modes.omega1_sq)};
        put_pair(0, exp_jet(s, t, orders, false));
        put_pair(2, exp_jet(s, t, orders, true));
        break;
    }
    case Regime::ComplexPair: {
        const std::complex<double> w0 = std::sqrt(modes.omega0_sq);
        put_pair(0, exp_jet({w0.imag(), w0.real()}, t, orders, false));
        put_pair(2, exp_jet({-w0.imag(), w0.real()}, t, orders, false));
        break;
    }
    }
    return basis;
}

Eigen::Vector4d basis_weights(const ModeCoeffs& coeffs)
{
    struct Visitor {
        Eigen::Vector4d operator()(const OscillatoryCoeffs& c) const
        {
            return {c.a1 * std::cos(c.alpha1), -c.a1 * std::sin(c.alpha1), c.a2 * std::cos(c.alpha2),
                    -c.a2 * std::sin(c.alpha2)};
        }
        Eigen::Vector4d operator()(const HarmonicCoeffs& c) const
        {
            return {c.a * std::cos(c.alpha), -c.a * std::sin(c.alpha), 0.0, 0.0};
        }
        Eigen::Vector4d operator()(const HyperbolicCoeffs& c) const
        {
            return {c.a_grow, c.a_decay, c.b * std::cos(c.phase), -c.b * std::sin(c.phase)};
        }
        Eigen::Vector4d operator()(const DegenerateCoeffs& c) const
        {
            return {c.a1 * std::cos(c.alpha1), -c.a1 * std::sin(c.alpha1), c.a2 * std::cos(c.alpha2),
                    -c.a2 * std::sin(c.alpha2)};
        }
        Eigen::Vector4d operator()(const ComplexPairCoeffs& c) const
        {
            return {c.grow.real(), -c.grow.imag(), c.decay.real(), -c.decay.imag()};
        }
    };
    return std::visit(Visitor{}, coeffs);
}

ModeCoeffs coeffs_from_weights(Regime regime, const Eigen::Vector4d& w)
{
    // Amplitudes that are negligible relative to the whole state get phase 0.
    const double total = w.norm();
    auto pair = [&](double c, double s) {
        auto [amp, phase] = amplitude_phase(c, s);
        if (amp <= kZeroAmplitude * total) {
            return std::pair{0.0, 0.0};
        }
        return std::pair{amp, phase};
    };

    switch (regime) {
    case Regime::OscillatoryDistinct: {
        auto [a1, p1] = pair(w(0), w(1));
        auto [a2, p2] = pair(w(2), w(3));
        return OscillatoryCoeffs{a1, p1, a2, p2};
    }
    case Regime::Degenerate: {
        auto [a1, p1] = pair(w(0), w(1));
        auto [a2, p2] = pair(w(2), w(3));
        return DegenerateCoeffs{a1, p1, a2, p2};
    }
    case Regime::Harmonic: {
        auto [a, p] = pair(w(0), w(1));
        return HarmonicCoeffs{a, p};
    }
    case Regime::Hyperbolic: {
        auto [b, p] = pair(w(2), w(3));
        return HyperbolicCoeffs{w(0), w(1), b, p};
    }
    case Regime::ComplexPair:
        return ComplexPairCoeffs{{w(0), -w(1)}, {w(2), -w(3)}};
    }
    throw InvalidArgument("unknown regime");
}

Eigen::VectorXd solution_derivatives(const Parameters& params, const ModeCoeffs& coeffs, double t, int orders)
{
    check_tag(params, coeffs);
    return mode_basis(mode_frequencies(params), t, orders) * basis_weights(coeffs);
}

JetState exact_solution(const Parameters& params, const ModeCoeffs& coeffs, double t)
{
    return solution_derivatives(params, coeffs, t, 4);
}

ModeCoeffs fit_mode_coefficients(const Parameters& params, const JetState& jet)
{
    const ModeData modes = mode_frequencies(params);
    if (modes.regime == Regime::Harmonic) {
        const double w = std::sqrt(modes.omega1_sq);
        return coeffs_from_weights(Regime::Harmonic, Eigen::Vector4d(jet(0), jet(1) / w, 0.0, 0.0));
    }

    const Eigen::Matrix4d basis = mode_basis(modes, 0.0, 4);
    const Eigen::JacobiSVD<Eigen::Matrix4d> svd(basis);
    const auto& sv = svd.singularValues();
    if (!(sv(3) > 0.0) || sv(0) / sv(3) > kMaxModeCondition) {
        throw IllConditioned("mode map is singular to working precision (condition "
                             + std::to_string(sv(0) / sv(3)) + ")");
    }
    return coeffs_from_weights(modes.regime, basis.partialPivLu().solve(jet));
}

double el_residual(const Parameters& params, const JetState& jet, double d4q)
{
    return params.lambda * d4q + jet(2) + params.omega_sq * jet(0);
}

Eigen::Matrix4d jet_generator(const Parameters& params)
{
    params.validate();
    Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
    if (params.lambda == 0.0) {
        g(0, 1) = 1.0;
        g(1, 0) = -params.omega_sq;
        g(2, 3) = 1.0;
        g(3, 2) = -params.omega_sq;
        return g;
    }
    g(0, 1) = g(1, 2) = g(2, 3) = 1.0;
    g(3, 0) = -params.omega_sq / params.lambda;
    g(3, 2) = -1.0 / params.lambda;
    return g;
}

} // namespace quartic
