#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace quartic {

template <typename Scalar>
using Vec4 = Eigen::Matrix<Scalar, 4, 1>;
template <typename Scalar>
using Mat4 = Eigen::Matrix<Scalar, 4, 4>;

// (q, dq, d2q, d3q): the position and its first three time derivatives.
using JetState = Vec4<double>;

// Darboux coordinates, always ordered (q1, p1, q2, p2).
using CanonicalState = Vec4<double>;

/// Standard symplectic form on (q1, p1, q2, p2): {q_i, p_j} = delta_ij.
template <typename Scalar = double>
Mat4<Scalar> standard_symplectic()
{
    Mat4<Scalar> j = Mat4<Scalar>::Zero();
    j(0, 1) = Scalar(1);
    j(1, 0) = Scalar(-1);
    j(2, 3) = Scalar(1);
    j(3, 2) = Scalar(-1);
    return j;
}

/// Permutation exchanging q_i and p_i. Symmetric and its own inverse.
template <typename Scalar = double>
Mat4<Scalar> position_momentum_swap()
{
    Mat4<Scalar> s = Mat4<Scalar>::Zero();
    s(0, 1) = s(1, 0) = Scalar(1);
    s(2, 3) = s(3, 2) = Scalar(1);
    return s;
}

/// Pfaffian of a 4x4 antisymmetric matrix; det(A) = pf(A)^2.
template <typename Derived>
typename Derived::Scalar pfaffian(const Eigen::MatrixBase<Derived>& a)
{
    static_assert(Derived::RowsAtCompileTime == 4 && Derived::ColsAtCompileTime == 4);
    return a(0, 1) * a(2, 3) - a(0, 2) * a(1, 3) + a(0, 3) * a(1, 2);
}

/// Entrywise |x|^T |A| |x|: the magnitude scale of the terms summed in x^T A x.
template <typename DerivedA, typename DerivedX>
typename DerivedA::Scalar quadratic_term_scale(const Eigen::MatrixBase<DerivedA>& a,
                                               const Eigen::MatrixBase<DerivedX>& x)
{
    return x.cwiseAbs().dot(a.cwiseAbs() * x.cwiseAbs());
}

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameters : public Error {
public:
    using Error::Error;
};

/// The operation has no meaning in the regime of the given parameters.
class UnsupportedRegime : public Error {
public:
    using Error::Error;
};

/// beta sits on (or within tolerance of) a point where the bracket family is singular.
class SingularBeta : public Error {
public:
    using Error::Error;
};

/// beta is admissible but outside the sector an operation is defined on.
class WrongSector : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class IllConditioned : public Error {
public:
    using Error::Error;
};

class IncompatibleMethod : public Error {
public:
    using Error::Error;
};

} // namespace quartic
