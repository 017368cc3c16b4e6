#include "quartic/invariants.hpp"

#include <cmath>
#include <string>

namespace quartic {

namespace {

using Complex = std::complex<double>;
using Matrix4c = Mat4<Complex>;

// c [ (d3q + x dq)^2 + y (d2q + x q)^2 ] as a symmetric form.
template <typename Scalar>
Mat4<Scalar> mode_square_form(Scalar c, Scalar x, Scalar y)
{
    const Vec4<Scalar> u(Scalar(0), x, Scalar(0), Scalar(1));
    const Vec4<Scalar> v(x, Scalar(0), Scalar(1), Scalar(0));
    return c * (u * u.transpose() + y * v * v.transpose());
}

void require_regime(const Parameters& params, Regime wanted, const char* what)
{
    const Regime regime = classify_regime(params);
    if (regime != wanted) {
        throw UnsupportedRegime(std::string(what) + " requires regime (" + std::string(roman_label(wanted))
                                + "), got (" + std::string(roman_label(regime)) + ")");
    }
}

// Complex J1 form of the complex-pair regime.
Matrix4c complex_first_form(const Parameters& params, const ModeData& modes)
{
    const Complex w = modes.omega0_sq;
    const Complex wb = std::conj(w);
    const Complex c = params.m / (std::sqrt(2.0) * (w * w - wb * wb));
    return mode_square_form<Complex>(c, w, wb);
}

} // namespace

IntegralForms integral_forms(const Parameters& params)
{
    const ModeData modes = mode_frequencies(params);
    const double m = params.m;
    IntegralForms out;
    switch (modes.regime) {
    case Regime::Harmonic:
        throw UnsupportedRegime("the harmonic regime has no lambda-dependent integrals");
    case Regime::OscillatoryDistinct:
    case Regime::Hyperbolic: {
        // Signed omega1^2 covers the hyperbolic regime as well.
        const double w1 = modes.omega1_sq;
        const double w2 = modes.omega2_sq;
        const double c = m / (std::sqrt(2.0) * (w1 * w1 - w2 * w2));
        out.first = mode_square_form(c, w1, w2);
        out.second = mode_square_form(c, w2, w1);
        break;
    }
    case Regime::Degenerate: {
        const double w = params.omega_sq;
        out.first = mode_square_form(m / (w * w), 2.0 * w, 2.0 * w);
        Eigen::Matrix4d f = Eigen::Matrix4d::Zero();
        f(0, 0) = 4.0 * m * w;
        f(1, 1) = 4.0 * m;
        f(1, 3) = f(3, 1) = m / w;
        f(2, 2) = -m / w;
        out.second = f;
        break;
    }
    case Regime::ComplexPair: {
        const Matrix4c f = complex_first_form(params, modes);
        out.first = f.real();
        out.second = f.imag();
        break;
    }
    }
    return out;
}

IntegralPair integrals_of_motion(const Parameters& params, const JetState& jet)
{
    const IntegralForms forms = integral_forms(params);
    return {jet.dot(forms.first * jet), jet.dot(forms.second * jet)};
}

Eigen::Matrix4d hamiltonian_form(const Parameters& params, BetaAngle beta)
{
    const Regime regime = classify_regime(params);
    sector_of(beta, regime);
    const IntegralForms forms = integral_forms(params);
    const double c = beta.cos();
    const double s = beta.sin();
    if (regime == Regime::ComplexPair) {
        // -2 Im(e^{i beta} (F1 + i F2))
        return -2.0 * (s * forms.first + c * forms.second);
    }
    return c * forms.first + s * forms.second;
}

double hamiltonian_value(const Parameters& params, BetaAngle beta, const JetState& jet)
{
    return jet.dot(hamiltonian_form(params, beta) * jet);
}

std::optional<RationalRatio> rational_ratio(const Parameters& params, int max_denominator)
{
    require_regime(params, Regime::OscillatoryDistinct, "rational_ratio");
    if (max_denominator < 1) {
        throw InvalidArgument("max_denominator must be positive");
    }
    const ModeData modes = mode_frequencies(params);
    const double ratio = std::sqrt(modes.omega1_sq / modes.omega2_sq);
    for (int l = 1; l <= max_denominator; ++l) {
        const double k = std::round(ratio * l);
        if (k >= 1.0 && std::abs(ratio - k / l) < kRatioTolerance * ratio) {
            return RationalRatio{static_cast<int>(k), l};
        }
    }
    return std::nullopt;
}

double third_integral(const Parameters& params, RationalRatio ratio, const JetState& jet)
{
    require_regime(params, Regime::OscillatoryDistinct, "third_integral");
    if (ratio.k < 1 || ratio.l < 1) {
        throw InvalidArgument("ratio terms must be positive");
    }
    const auto coeffs = std::get<OscillatoryCoeffs>(fit_mode_coefficients(params, jet));
    if (coeffs.a1 < kZeroAmplitude || coeffs.a2 < kZeroAmplitude) {
        return 0.0;
    }
    return std::sin(ratio.l * coeffs.alpha1 - ratio.k * coeffs.alpha2);
}

JetState noether_variation(const Parameters& params, const JetState& jet, int sign, double epsilon)
{
    require_regime(params, Regime::OscillatoryDistinct, "noether_variation");
    if (sign != 1 && sign != -1) {
        throw InvalidArgument("sign must be +1 or -1");
    }
    const ModeData modes = mode_frequencies(params);
    const Eigen::Matrix4d g = jet_generator(params);
    const double split = sign * (modes.omega1_sq - modes.omega2_sq);
    return jet + epsilon * (g * g * g + split * g) * jet;
}

} // namespace quartic
