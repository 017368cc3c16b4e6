#include "quartic/poisson.hpp"

#include <cmath>

#include <Eigen/LU>

namespace quartic {

namespace {

using Complex = std::complex<double>;

constexpr double kPrintedDiscrepancy = 1e-10;

// Fills the four independent entries and their antisymmetric partners.
template <typename Scalar>
Mat4<Scalar> assemble(Scalar q_dq, Scalar q_d3q, Scalar dq_d2q, Scalar d2q_d3q)
{
    Mat4<Scalar> pi = Mat4<Scalar>::Zero();
    pi(0, 1) = q_dq;
    pi(0, 3) = q_d3q;
    pi(1, 2) = dq_d2q;
    pi(2, 3) = d2q_d3q;
    return pi - Mat4<Scalar>(pi.transpose());
}

template <typename Scalar>
Vec4<std::complex<Scalar>> position_combination(std::complex<Scalar> r)
{
    return {r, Scalar(0), Scalar(1), Scalar(0)};
}

template <typename Scalar>
Vec4<std::complex<Scalar>> velocity_combination(std::complex<Scalar> r)
{
    return {Scalar(0), r, Scalar(0), Scalar(1)};
}

} // namespace

template <typename Scalar>
Mat4<Scalar> bracket_tensor(const Parameters& params, BetaAngle beta)
{
    const Regime regime = classify_regime(params);
    sector_of(beta, regime);
    const ModeRoots<Scalar> modes = mode_roots<Scalar>(params, regime);
    const Scalar m = params.m;
    const Scalar lambda = params.lambda;
    const Scalar c = std::cos(static_cast<Scalar>(beta.value()));
    const Scalar s = std::sin(static_cast<Scalar>(beta.value()));
    const Scalar one = 1;
    const Scalar two = 2;

    switch (regime) {
    case Regime::OscillatoryDistinct:
    case Regime::Hyperbolic: {
        const Scalar w1 = modes.omega1_sq;
        const Scalar w2 = modes.omega2_sq;
        const Scalar gamma = one / (std::sqrt(two) * m * lambda * (w1 - w2));
        const Scalar mixed = gamma * (w2 / c + w1 / s);
        return assemble<Scalar>(gamma * (one / c + one / s), -mixed, mixed, gamma * (w2 * w2 / c + w1 * w1 / s));
    }
    case Regime::Degenerate: {
        const Scalar w = params.omega_sq;
        const Scalar denom = m * s * s;
        const Scalar mixed = (two * c + s) * w / (two * denom);
        return assemble<Scalar>(-c / (two * denom), mixed, -mixed, -two * (c + s) * w * w / denom);
    }
    case Regime::ComplexPair: {
        // gamma = -i g; the printed entries reduce to real combinations of cos and sin.
        const Scalar a = modes.omega0_sq.real();
        const Scalar b = modes.omega0_sq.imag();
        const Scalar g = one / (two * std::sqrt(two) * m * lambda * b);
        const Scalar mixed = two * g * (a * c - b * s);
        return assemble<Scalar>(-two * g * c, mixed, -mixed, -two * g * ((a * a - b * b) * c - two * a * b * s));
    }
    case Regime::Harmonic: break;
    }
    return Mat4<Scalar>::Zero();
}

template Mat4<double> bracket_tensor<double>(const Parameters&, BetaAngle);
template Mat4<long double> bracket_tensor<long double>(const Parameters&, BetaAngle);

BracketMatrix bracket_matrix(const Parameters& params, BetaAngle beta)
{
    const ModeData modes = mode_frequencies(params);
    BracketMatrix out;
    out.pi = bracket_tensor<double>(params, beta);
    out.regime = modes.regime;
    out.beta = beta.value();
    out.params = params;
    switch (modes.regime) {
    case Regime::OscillatoryDistinct:
    case Regime::Hyperbolic:
        out.gamma = 1.0 / (std::sqrt(2.0) * params.m * params.lambda * (modes.omega1_sq - modes.omega2_sq));
        break;
    case Regime::Degenerate: out.gamma = 1.0 / (2.0 * params.m); break;
    case Regime::ComplexPair:
        out.gamma = Complex(0.0, -1.0 / (2.0 * std::sqrt(2.0) * params.m * params.lambda * modes.omega0_sq.imag()));
        break;
    case Regime::Harmonic: break;
    }
    return out;
}

DeterminantReport bracket_determinant(const BracketMatrix& matrix)
{
    DeterminantReport out;
    const Mat4<long double> pi = matrix.pi.cast<long double>();
    const long double pf = pfaffian(pi);
    out.numeric = static_cast<double>(pi.determinant());
    out.pfaffian_square = static_cast<double>(pf * pf);

    if (matrix.regime == Regime::OscillatoryDistinct || matrix.regime == Regime::Hyperbolic) {
        const Parameters& p = matrix.params;
        const ModeData modes = mode_frequencies(p);
        const double cs = std::cos(matrix.beta) * std::sin(matrix.beta);
        const double derived = 1.0 / (2.0 * p.m * p.m * p.lambda * p.lambda * cs);
        const double printed = (modes.omega1_sq - modes.omega2_sq) / cs;
        out.derived_closed_form = derived * derived;
        out.printed_closed_form = printed * printed;
        out.printed_discrepancy =
            std::abs(*out.printed_closed_form - out.numeric) > kPrintedDiscrepancy * std::abs(out.numeric);
    }
    return out;
}

std::array<Complex, 4> mode_combination_brackets(const Parameters& params, BetaAngle beta)
{
    using Wide = long double;
    using WideComplex = std::complex<Wide>;
    const ModeRoots<Wide> modes = mode_roots<Wide>(params, classify_regime(params));
    const Mat4<WideComplex> pi = bracket_tensor<Wide>(params, beta).cast<WideComplex>();
    const WideComplex r1 = modes.root1();
    const WideComplex r2 = modes.root2();
    auto bracket = [&](const Vec4<WideComplex>& u, const Vec4<WideComplex>& v) {
        const WideComplex value = u.transpose() * pi * v;
        return Complex(static_cast<double>(value.real()), static_cast<double>(value.imag()));
    };
    return {bracket(position_combination(r1), position_combination(r2)),
            bracket(velocity_combination(r1), velocity_combination(r2)),
            bracket(position_combination(r1), velocity_combination(r2)),
            bracket(position_combination(r2), velocity_combination(r1))};
}

std::array<double, 4> mode_combination_scales(const Parameters& params, BetaAngle beta)
{
    const ModeData modes = mode_frequencies(params);
    const Eigen::Matrix4d pi = bracket_matrix(params, beta).pi.cwiseAbs();
    const double r1 = std::abs(modes.root1());
    const double r2 = std::abs(modes.root2());
    auto scale = [&](const Eigen::Vector4d& u, const Eigen::Vector4d& v) { return u.dot(pi * v); };
    const Eigen::Vector4d u1(r1, 0, 1, 0), u2(r2, 0, 1, 0), v1(0, r1, 0, 1), v2(0, r2, 0, 1);
    return {scale(u1, u2), scale(v1, v2), scale(u1, v2), scale(u2, v1)};
}

JetState hamiltonian_flow_field(const Parameters& params, BetaAngle beta, const JetState& jet)
{
    const Eigen::Matrix4d h = hamiltonian_form(params, beta);
    return bracket_matrix(params, beta).pi * (2.0 * h * jet);
}

} // namespace quartic
