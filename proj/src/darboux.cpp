#include "quartic/darboux.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/LU>

namespace quartic {

namespace {

template <typename Scalar>
struct Chart {
    Mat4<Scalar> forward;
    Mat4<Scalar> hamiltonian_form;
    Scalar delta = 1;
    std::complex<Scalar> epsilon{};
};

template <typename Scalar>
using Row = Eigen::Matrix<Scalar, 1, 4>;

// Rows (q1, p1, q2, p2) built from d2q + r q and d3q + r dq.
template <typename Scalar>
Row<Scalar> position_row(Scalar r, Scalar scale)
{
    return scale * Row<Scalar>(r, 0, 1, 0);
}

template <typename Scalar>
Row<Scalar> velocity_row(Scalar r, Scalar scale)
{
    return scale * Row<Scalar>(0, r, 0, 1);
}

// Sectors (0, pi/2) and (-pi/2, 0) of regimes (i) and (iii).
template <typename Scalar>
Chart<Scalar> distinct_chart(const Parameters& params, const ModeRoots<Scalar>& modes, Scalar beta)
{
    const Scalar m = params.m;
    const Scalar w1 = modes.omega1_sq;
    const Scalar w2 = modes.omega2_sq;
    const Scalar c = std::cos(beta);
    const Scalar s = std::sin(beta);
    const Scalar sign = s > 0 ? 1 : -1;
    const Scalar delta = std::sqrt(std::sqrt(Scalar(2)) * Scalar(params.lambda) / (w1 - w2));
    const Scalar first = delta * std::sqrt(c);
    const Scalar second = delta * std::sqrt(sign * s);

    Chart<Scalar> out;
    out.delta = delta;
    out.forward.row(0) = position_row(w1, first);
    out.forward.row(1) = velocity_row(w1, m * first);
    out.forward.row(2) = position_row(w2, second);
    out.forward.row(3) = velocity_row(w2, sign * m * second);
    out.hamiltonian_form =
        Vec4<Scalar>(m * w2 / 2, 1 / (2 * m), sign * m * w1 / 2, sign / (2 * m)).asDiagonal();
    return out;
}

// Sector (0, pi) of the degenerate regime.
template <typename Scalar>
Chart<Scalar> degenerate_chart(const Parameters& params, Scalar beta)
{
    const Scalar m = params.m;
    const Scalar w = params.omega_sq;
    const Scalar c = std::cos(beta);
    const Scalar s = std::sin(beta);
    const Scalar r = std::sqrt(s);
    // cos(beta) tan(beta) = sin(beta), so the rows stay finite at beta = pi/2.
    const Row<Scalar> mixed_position(2 * (c + s) * w, 0, c, 0);
    const Row<Scalar> mixed_velocity(0, 2 * (c + s) * w, 0, c);

    Chart<Scalar> out;
    out.forward.row(0) = position_row<Scalar>(2 * w, r / w);
    out.forward.row(1) = m / (r * w) * mixed_velocity;
    out.forward.row(2) = mixed_position / (r * w);
    out.forward.row(3) = velocity_row<Scalar>(2 * w, m * r / w);
    Mat4<Scalar> k = Mat4<Scalar>::Zero();
    k(1, 3) = k(3, 1) = 1 / (2 * m);
    k(0, 2) = k(2, 0) = m * w;
    k(0, 0) = -m * w;
    out.hamiltonian_form = k;
    return out;
}

// Complex-pair regime: real and imaginary parts of the complex chart.
template <typename Scalar>
Chart<Scalar> complex_chart(const Parameters& params, const ModeRoots<Scalar>& modes, Scalar beta)
{
    using Complex = std::complex<Scalar>;
    const Scalar m = params.m;
    const Complex w0 = modes.omega0_sq;
    const Scalar a = w0.real();
    const Scalar b = w0.imag();
    const Scalar root2 = std::sqrt(Scalar(2));
    // epsilon^2 = (sqrt(2) b / lambda) e^{-i beta}; this root has Re >= 0, and Im > 0 when Re = 0.
    const Complex epsilon = std::sqrt(root2 * b / Scalar(params.lambda)) * std::polar(Scalar(1), -beta / 2);
    const Complex zero(0), one(1);

    const Vec4<Complex> q1 = Vec4<Complex>(w0, zero, one, zero) / epsilon;
    const Vec4<Complex> p1 = Complex(m) * Vec4<Complex>(zero, w0, zero, one) / epsilon;

    Chart<Scalar> out;
    out.epsilon = epsilon;
    out.forward.row(0) = root2 * q1.real().transpose();
    out.forward.row(1) = root2 * p1.real().transpose();
    out.forward.row(2) = root2 * q1.imag().transpose();
    out.forward.row(3) = -root2 * p1.imag().transpose();
    Mat4<Scalar> k = Vec4<Scalar>(m * a / 2, 1 / (2 * m), -m * a / 2, -1 / (2 * m)).asDiagonal();
    k(0, 2) = k(2, 0) = m * b / 2;
    out.hamiltonian_form = k;
    return out;
}

// The symmetry H -> -H, q_i <-> p_i carries a chart for beta -/+ pi to beta.
template <typename Scalar>
Chart<Scalar> swapped(Chart<Scalar> chart)
{
    const Mat4<Scalar> swap = position_momentum_swap<Scalar>();
    chart.forward = swap * chart.forward;
    chart.hamiltonian_form = -swap * chart.hamiltonian_form * swap;
    return chart;
}

template <typename Scalar>
Chart<Scalar> build_chart(const Parameters& params, const Sector& sector, BetaAngle angle)
{
    constexpr Scalar pi = std::numbers::pi_v<Scalar>;
    const ModeRoots<Scalar> modes = mode_roots<Scalar>(params, classify_regime(params));
    const Scalar beta = angle.value();
    switch (sector.kind) {
    case SectorKind::FirstQuadrant:
    case SectorKind::FourthQuadrant: return distinct_chart(params, modes, beta);
    case SectorKind::SecondQuadrant: return swapped(distinct_chart(params, modes, beta - pi));
    case SectorKind::ThirdQuadrant: return swapped(distinct_chart(params, modes, beta + pi));
    case SectorKind::UpperHalf: return degenerate_chart(params, beta);
    case SectorKind::LowerHalf: return swapped(degenerate_chart(params, beta + pi));
    case SectorKind::FullCircle: return complex_chart(params, modes, beta);
    }
    throw InvalidArgument("unknown sector");
}

} // namespace

DarbouxMap darboux_map(const Parameters& params, BetaAngle beta)
{
    const Sector sector = sector_of(beta, classify_regime(params));
    const Chart<double> chart = build_chart<double>(params, sector, beta);

    DarbouxMap out;
    out.forward = chart.forward;
    out.inverse = chart.forward.partialPivLu().inverse();
    out.delta = chart.delta;
    out.epsilon = chart.epsilon;
    out.sector = sector;
    out.hamiltonian_form = chart.hamiltonian_form;
    return out;
}

CanonicalState to_canonical(const Parameters& params, BetaAngle beta, const JetState& jet)
{
    return darboux_map(params, beta).forward * jet;
}

JetState from_canonical(const Parameters& params, BetaAngle beta, const CanonicalState& canon)
{
    return darboux_map(params, beta).inverse * canon;
}

double canonical_hamiltonian(const Parameters& params, BetaAngle beta, const CanonicalState& canon)
{
    return canon.dot(darboux_map(params, beta).hamiltonian_form * canon);
}

CanonicityReport verify_canonicity(const Parameters& params, BetaAngle beta)
{
    const DarbouxMap map = darboux_map(params, beta);
    using Wide = long double;
    const Mat4<Wide> forward = build_chart<Wide>(params, map.sector, beta).forward;
    const Mat4<Wide> pushed = forward * bracket_tensor<Wide>(params, beta) * forward.transpose();
    CanonicityReport out;
    out.pushed_forward = pushed.cast<double>();
    out.residual = static_cast<double>((pushed - standard_symplectic<Wide>()).cwiseAbs().maxCoeff());
    out.inverse_residual = (map.forward * map.inverse - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff();
    out.canonical = out.residual < kCanonicityTolerance;
    return out;
}

} // namespace quartic
