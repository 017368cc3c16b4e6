#pragma once

#include <array>
#include <complex>
#include <optional>

#include "quartic/invariants.hpp"

namespace quartic {

/// f(x) = x^T A x + b^T x + c on jet space.
template <typename Scalar = double>
struct QuadraticObservable {
    Mat4<Scalar> a = Mat4<Scalar>::Zero();
    Vec4<Scalar> b = Vec4<Scalar>::Zero();
    Scalar c = Scalar(0);

    static QuadraticObservable quadratic(const Mat4<Scalar>& form)
    {
        QuadraticObservable out;
        out.a = (form + form.transpose()) / Scalar(2);
        return out;
    }

    static QuadraticObservable linear(const Vec4<Scalar>& coeffs)
    {
        QuadraticObservable out;
        out.b = coeffs;
        return out;
    }

    /// The coordinate function x_index.
    static QuadraticObservable coordinate(int index)
    {
        return linear(Vec4<Scalar>::Unit(index));
    }

    Scalar operator()(const Vec4<Scalar>& x) const { return x.dot(a * x) + b.dot(x) + c; }

    Vec4<Scalar> gradient(const Vec4<Scalar>& x) const { return (a + a.transpose()) * x + b; }
};

/// grad f(x)^T Pi grad g(x)
template <typename Scalar, typename Derived>
Scalar poisson_bracket(const Eigen::MatrixBase<Derived>& pi, const QuadraticObservable<Scalar>& f,
                       const QuadraticObservable<Scalar>& g, const Vec4<Scalar>& x)
{
    return f.gradient(x).dot(pi * g.gradient(x));
}

/// Constant bracket {x_i, x_j} on the ordered basis (q, dq, d2q, d3q).
struct BracketMatrix {
    Eigen::Matrix4d pi = Eigen::Matrix4d::Zero();
    /// Normalization constant of the family: purely imaginary in regime (v),
    /// the common 1/(2m) prefactor in regime (iv).
    std::complex<double> gamma{};
    Regime regime = Regime::OscillatoryDistinct;
    double beta = 0.0;
    Parameters params;
};

/// Throws SingularBeta for excluded beta and UnsupportedRegime for Harmonic.
BracketMatrix bracket_matrix(const Parameters& params, BetaAngle beta);

/// The bracket tensor alone, evaluated in Scalar (double or long double).
template <typename Scalar>
Mat4<Scalar> bracket_tensor(const Parameters& params, BetaAngle beta);

/// Both determinant values are evaluated in long double from the double entries.
struct DeterminantReport {
    double numeric = 0.0;
    /// (a d - b^2)^2 with a = {q,dq}, b = -{q,d3q}, d = {d2q,d3q}.
    double pfaffian_square = 0.0;
    /// (1 / (2 m^2 lambda^2 cos sin))^2, regimes (i) and (iii).
    std::optional<double> derived_closed_form;
    /// ((omega1^2 - omega2^2) / (cos sin))^2 as printed, regimes (i) and (iii).
    std::optional<double> printed_closed_form;
    /// True when the printed value differs from the numeric one by more than 1e-10 relative.
    bool printed_discrepancy = false;
};

DeterminantReport bracket_determinant(const BracketMatrix& matrix);

/// Brackets of the mode combinations u_k = d2q + r_k q and v_k = d3q + r_k dq
/// for the two roots r_1, r_2 (complex in regime (v)), in the order
/// {u1,u2}, {v1,v2}, {u1,v2}, {u2,v1}. All vanish for admissible beta.
/// Evaluated in long double.
std::array<std::complex<double>, 4> mode_combination_brackets(const Parameters& params, BetaAngle beta);

/// Scale of the terms summed in each mode_combination_brackets entry, for
/// judging the cancellation error.
std::array<double, 4> mode_combination_scales(const Parameters& params, BetaAngle beta);

/// Pi grad H(beta) at the jet state.
JetState hamiltonian_flow_field(const Parameters& params, BetaAngle beta, const JetState& jet);

} // namespace quartic
