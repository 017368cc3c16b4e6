#include <doctest.h>

#include <numbers>

#include <Eigen/SVD>

#include "quartic/invariants.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace quartic;
using namespace quartic::testing;

namespace {

constexpr double kPi = std::numbers::pi;

// FIX-A mode amplitudes of a state at t = 0: q = a1 cos(2t + p1) + a2 cos(t + p2).
struct Amplitudes {
    double a1_sq, a2_sq;
};

Amplitudes fix_a_amplitudes(const JetState& x)
{
    // c1 = a1 cos p1 etc. from q = c1 + c2, d2q = -4 c1 - c2, and likewise for the odd pair.
    const double c1 = -(x(2) + x(0)) / 3.0;
    const double c2 = x(0) - c1;
    const double s1 = (x(3) + x(1)) / 6.0; // dq = -2 s1 - s2, d3q = 8 s1 + s2
    const double s2 = -x(1) - 2.0 * s1;
    return {c1 * c1 + s1 * s1, c2 * c2 + s2 * s2};
}

} // namespace

TEST_CASE("FIX-A integrals in terms of mode amplitudes")
{
    Generator gen(21);
    for (int i = 0; i < 200; ++i) {
        const JetState x = gen.jet();
        const Amplitudes a = fix_a_amplitudes(x);
        const IntegralPair j = integrals_of_motion(kFixA, x);
        CHECK(j.k1 == doctest::Approx(3.0 * a.a2_sq / (5.0 * std::sqrt(2.0))).epsilon(1e-12));
        CHECK(j.k2 == doctest::Approx(12.0 * a.a1_sq / (5.0 * std::sqrt(2.0))).epsilon(1e-12));
    }
    const IntegralPair unit = integrals_of_motion(kFixA, JetState(1, 0, 0, 0));
    CHECK(unit.k1 == doctest::Approx(16.0 / (15.0 * std::sqrt(2.0))));
    CHECK(unit.k2 == doctest::Approx(4.0 / (15.0 * std::sqrt(2.0))));
}

TEST_CASE("hamiltonian value at FIX-A, beta = pi/4")
{
    CHECK(hamiltonian_value(kFixA, BetaAngle(kPi / 4), JetState(1, 0, 0, 0)) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("hamiltonian is linear in the integrals")
{
    Generator gen(22);
    for (const auto& fix : kFixtures) {
        const bool complex = classify_regime(fix.params) == Regime::ComplexPair;
        for (const Sector& sector : sectors_of(classify_regime(fix.params))) {
            for (int i = 0; i < 50; ++i) {
                const double b = gen.beta_in(sector);
                const JetState x = gen.jet();
                const IntegralPair j = integrals_of_motion(fix.params, x);
                const double expected = complex ? -2.0 * (std::sin(b) * j.k1 + std::cos(b) * j.k2)
                                                : std::cos(b) * j.k1 + std::sin(b) * j.k2;
                CHECK(hamiltonian_value(fix.params, BetaAngle(b), x) == doctest::Approx(expected).scale(1.0));
            }
        }
    }
}

TEST_CASE("integrals are conserved along exact solutions")
{
    Generator gen(23);
    for (const auto& fix : kFixtures) {
        const IntegralForms forms = integral_forms(fix.params);
        const Eigen::Matrix4d g = companion(fix.params.omega_sq, fix.params.lambda);
        // d/dt x^T F x = x^T (F G + G^T F) x vanishes identically.
        CHECK(max_abs(forms.first * g + g.transpose() * forms.first) < 1e-12 * max_abs(forms.first) * max_abs(g));
        CHECK(max_abs(forms.second * g + g.transpose() * forms.second) < 1e-12 * max_abs(forms.second) * max_abs(g));

        const ModeCoeffs coeffs = fit_mode_coefficients(fix.params, gen.jet());
        auto k1 = [&](double t) { return integrals_of_motion(fix.params, exact_solution(fix.params, coeffs, t)).k1; };
        auto k2 = [&](double t) { return integrals_of_motion(fix.params, exact_solution(fix.params, coeffs, t)).k2; };
        CHECK(std::abs(derivative(k1, 0.3)) < 1e-8);
        CHECK(std::abs(derivative(k2, 0.3)) < 1e-8);
    }
}

TEST_CASE("degenerate integrals at FIX-B")
{
    // q = cos(sqrt2 t): d3q + 2 dq = 0, d2q + 2 q = 0 so J1 vanishes.
    const JetState x(1.0, 0.0, -2.0, 0.0);
    CHECK(std::abs(integrals_of_motion(kFixB, x).k1) < 1e-15);
    // J2 = 4 q^2 + 4 dq^2 + 2 dq d3q - d2q^2 at m = omega^2 = 1.
    const JetState y(1.0, 2.0, 3.0, 4.0);
    CHECK(integrals_of_motion(kFixB, y).k2 == doctest::Approx(4.0 + 16.0 + 16.0 - 9.0));
    // J1 = (d3q + 2 dq)^2 + 2 (d2q + 2 q)^2.
    CHECK(integrals_of_motion(kFixB, y).k1 == doctest::Approx(64.0 + 50.0));
}

TEST_CASE("rational frequency ratios")
{
    auto ratio = rational_ratio(kFixA, 12);
    REQUIRE(ratio);
    CHECK(ratio->k == 2);
    CHECK(ratio->l == 1);

    // omega1^2 = 3, omega2^2 = 1: ratio sqrt 3.
    CHECK_FALSE(rational_ratio({1.0, 0.75, 0.25}, 12));

    // omega1^2 = 9/4, omega2^2 = 1: ratio 3/2.
    ratio = rational_ratio({1.0, 9.0 / 13.0, 4.0 / 13.0}, 12);
    REQUIRE(ratio);
    CHECK(ratio->k == 3);
    CHECK(ratio->l == 2);

    CHECK_THROWS_AS(rational_ratio(kFixC, 12), UnsupportedRegime);
    CHECK_THROWS_AS(rational_ratio(kFixA, 0), InvalidArgument);
}

TEST_CASE("third integral at FIX-A")
{
    const RationalRatio ratio{2, 1};
    // q = cos(2t + p1) + cos(t + p2): C = sin(p1 - 2 p2).
    Generator gen(24);
    for (int i = 0; i < 50; ++i) {
        const double p1 = gen.uniform(-1.0, 1.0), p2 = gen.uniform(-1.0, 1.0);
        const JetState x = exact_solution(kFixA, OscillatoryCoeffs{1.0, p1, 1.0, p2}, 0.0);
        CHECK(third_integral(kFixA, ratio, x) == doctest::Approx(std::sin(p1 - 2.0 * p2)).epsilon(1e-10));
        const JetState later = exact_solution(kFixA, OscillatoryCoeffs{1.0, p1, 1.0, p2}, gen.uniform(0.0, 10.0));
        CHECK(third_integral(kFixA, ratio, later) == doctest::Approx(std::sin(p1 - 2.0 * p2)).epsilon(1e-10));
    }
    // A single-mode state has no relative phase.
    CHECK(third_integral(kFixA, ratio, JetState(1, 0, -4, 0)) == 0.0);
}

TEST_CASE("J1, J2, C are functionally independent at generic states")
{
    Generator gen(25);
    for (int i = 0; i < 20; ++i) {
        const JetState x = gen.jet();
        Eigen::Matrix<double, 3, 4> jac;
        jac.row(0) = gradient([](const Eigen::Vector4d& y) { return integrals_of_motion(kFixA, y).k1; }, x).transpose();
        jac.row(1) = gradient([](const Eigen::Vector4d& y) { return integrals_of_motion(kFixA, y).k2; }, x).transpose();
        jac.row(2) = gradient([](const Eigen::Vector4d& y) { return third_integral(kFixA, {2, 1}, y); }, x, 1e-6).transpose();
        const Eigen::JacobiSVD<Eigen::Matrix<double, 3, 4>> svd(jac);
        CHECK(svd.singularValues()(2) > 1e-6 * svd.singularValues()(0));
    }
}

TEST_CASE("Noether variations preserve both integrals to first order")
{
    Generator gen(26);
    const double eps = 1e-4;
    for (int sign : {1, -1}) {
        for (int i = 0; i < 50; ++i) {
            const JetState x = gen.jet();
            const IntegralPair up = integrals_of_motion(kFixA, noether_variation(kFixA, x, sign, eps));
            const IntegralPair down = integrals_of_motion(kFixA, noether_variation(kFixA, x, sign, -eps));
            CHECK(std::abs(up.k1 - down.k1) / (2 * eps) < 1e-8);
            CHECK(std::abs(up.k2 - down.k2) / (2 * eps) < 1e-8);
        }
    }
    CHECK_THROWS_AS(noether_variation(kFixA, JetState::Zero(), 2, 1e-3), InvalidArgument);
}

TEST_CASE("harmonic regime has no integral forms")
{
    CHECK_THROWS_AS(integral_forms({1.0, 1.0, 0.0}), UnsupportedRegime);
}
