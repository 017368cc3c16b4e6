#include <doctest.h>

#include <numbers>

#include "quartic/dynamics.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace quartic;
using namespace quartic::testing;

namespace {

constexpr double kPi = std::numbers::pi;

IntegrationOptions options(double t_end, double dt, int every = 1)
{
    IntegrationOptions o;
    o.t_end = t_end;
    o.dt = dt;
    o.sample_every = every;
    return o;
}

double final_error(const Parameters& p, const JetState& x0, double t_end, double dt)
{
    const Trajectory tr = integrate_jet(p, x0, options(t_end, dt, 1000000), Method::RK4);
    const JetState exact = exact_solution(p, fit_mode_coefficients(p, x0), t_end);
    return max_abs(tr.states.back() - exact);
}

} // namespace

TEST_CASE("exact propagator identities")
{
    CHECK(max_abs(exact_propagator(kFixA, 0.0) - Eigen::Matrix4d::Identity()) < 1e-15);
    // Periods pi and 2 pi share 2 pi.
    CHECK(max_abs(exact_propagator(kFixA, 2 * kPi) - Eigen::Matrix4d::Identity()) < 1e-12);
    for (const auto& fix : kFixtures) {
        const Eigen::Matrix4d ab = exact_propagator(fix.params, 0.3) * exact_propagator(fix.params, 0.9);
        const Eigen::Matrix4d direct = exact_propagator(fix.params, 1.2);
        CHECK(max_abs(ab - direct) < 1e-13 * max_abs(direct));
        // Generator: (P(h) - P(-h)) / 2h -> G.
        const double h = 1e-4;
        const Eigen::Matrix4d g = (exact_propagator(fix.params, h) - exact_propagator(fix.params, -h)) / (2 * h);
        CHECK(max_abs(g - companion(fix.params.omega_sq, fix.params.lambda)) < 1e-6);
    }
}

TEST_CASE("exact trajectories match closed-form solutions")
{
    Generator gen(51);
    for (const auto& fix : kFixtures) {
        const JetState x0 = gen.jet();
        const ModeCoeffs coeffs = fit_mode_coefficients(fix.params, x0);
        const Trajectory tr = integrate_jet(fix.params, x0, options(5.0, 1e-2, 50), Method::Exact);
        for (std::size_t i = 0; i < tr.times.size(); ++i) {
            const JetState expected = exact_solution(fix.params, coeffs, tr.times[i]);
            CHECK(max_abs(tr.states[i] - expected) < 1e-12 * std::max(1.0, max_abs(expected)));
        }
    }
}

TEST_CASE("canonical flow of FIX-A at beta = pi/4")
{
    const BetaAngle beta(kPi / 4);
    const CanonicalState x0 = to_canonical(kFixA, beta, JetState(1, 0, 0, 0));
    for (Method method : {Method::Exact, Method::RK4, Method::ImplicitMidpoint, Method::Leapfrog}) {
        const Trajectory tr = integrate_canonical(kFixA, beta, x0, options(3.0, 1e-3, 100), method);
        CHECK(tr.kind == StateKind::Canonical);
        for (std::size_t i = 0; i < tr.times.size(); ++i) {
            const double t = tr.times[i];
            // q1 oscillates at omega2 = 1, q2 at omega1 = 2.
            CHECK(tr.states[i](0) == doctest::Approx(4 / std::sqrt(15.0) * std::cos(t)).scale(1.0).epsilon(1e-6));
            CHECK(tr.states[i](2) == doctest::Approx(1 / std::sqrt(15.0) * std::cos(2 * t)).scale(1.0).epsilon(1e-6));
        }
    }
}

TEST_CASE("RK4 converges at fourth order")
{
    const JetState x0(1, 0.2, -0.3, 0.1);
    for (const auto& fix : kFixtures) {
        const double coarse = final_error(fix.params, x0, 2.0, 2e-2);
        const double fine = final_error(fix.params, x0, 2.0, 1e-2);
        CHECK(coarse / fine >= 12.0);
        CHECK(coarse / fine <= 20.0);
    }
}

TEST_CASE("leapfrog energy error is second order")
{
    const BetaAngle beta(kPi / 4);
    const CanonicalState x0 = to_canonical(kFixA, beta, JetState(1, 0, 0, 0));
    auto drift = [&](double dt) {
        const Trajectory tr = integrate_canonical(kFixA, beta, x0, options(100.0, dt, 10), Method::Leapfrog);
        return drift_report(kFixA, beta, tr).find("H").max_relative_drift;
    };
    const double coarse = drift(2e-3);
    const double fine = drift(1e-3);
    CHECK(fine < 1e-6);
    CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("implicit midpoint conserves the quadratic hamiltonian")
{
    const BetaAngle beta(kPi / 4);
    const CanonicalState x0 = to_canonical(kFixA, beta, JetState(1, 0, 0, 0));
    const Trajectory tr = integrate_canonical(kFixA, beta, x0, options(100.0, 1e-2, 10), Method::ImplicitMidpoint);
    CHECK(drift_report(kFixA, beta, tr).find("H").max_relative_drift < 1e-12);
}

TEST_CASE("leapfrog on the coupled complex-pair chart")
{
    // The q1 q2 coupling sits in the potential, so the splitting still applies.
    const BetaAngle beta(1.0);
    const CanonicalState x0 = to_canonical(kFixC, beta, JetState(1, 0, 0, 0));
    const Trajectory leap = integrate_canonical(kFixC, beta, x0, options(2.0, 1e-3, 2000), Method::Leapfrog);
    const Trajectory exact = integrate_canonical(kFixC, beta, x0, options(2.0, 1e-3, 2000), Method::Exact);
    CHECK(max_abs(leap.states.back() - exact.states.back()) < 1e-5);
}

TEST_CASE("jet and canonical integrations agree")
{
    for (double b : {kPi / 4, -1.0, 2.0, -2.5}) {
        CrossCheckOptions o;
        o.integration = options(10.0, 1e-3, 10);
        CHECK(cross_check(kFixA, BetaAngle(b), JetState(1, 0, 0, 0), o) < 1e-6);
        o.jet_method = o.canonical_method = Method::Exact;
        CHECK(cross_check(kFixA, BetaAngle(b), JetState(1, 0, 0, 0), o) < 1e-11);
    }
}

TEST_CASE("hyperbolic growth rate")
{
    // Growing mode at FIX-D: kappa^2 = 1 + sqrt(3).
    const double kappa = std::sqrt(1.0 + std::sqrt(3.0));
    const Trajectory tr = integrate_jet(kFixD, JetState(1, 0, 0, 0), options(20.0, 1e-3, 1000), Method::Exact);
    const std::size_t n = tr.times.size();
    const double rate = (std::log(std::abs(tr.states[n - 1](0))) - std::log(std::abs(tr.states[n - 2](0))))
                      / (tr.times[n - 1] - tr.times[n - 2]);
    CHECK(rate == doctest::Approx(kappa).epsilon(1e-6));
}

TEST_CASE("long RK4 run conserves the integrals")
{
    const BetaAngle beta(kPi / 4);
    const Trajectory tr = integrate_jet(kFixA, JetState(1, 0, 0, 0), options(100.0, 1e-2, 100), Method::RK4);
    CHECK(tr.times.size() == 101);
    const DriftReport drift = drift_report(kFixA, beta, tr);
    CHECK(drift.find("k1").max_relative_drift < 1e-8);
    CHECK(drift.find("k2").max_relative_drift < 1e-8);
    CHECK(drift.find("H").max_relative_drift < 1e-8);
    // Phase error of the fourth-order scheme at dt = 1e-2.
    CHECK(drift.find("C").max_absolute_drift < 1e-6);
    REQUIRE(drift.ratio);
    CHECK(drift.ratio->k == 2);
}

TEST_CASE("sampling and argument checks")
{
    const Trajectory tr = integrate_jet(kFixA, JetState(1, 0, 0, 0), options(1.0, 0.3, 1), Method::RK4);
    // dt is shrunk so the grid lands on t_end.
    CHECK(tr.times.back() == doctest::Approx(1.0));
    CHECK(tr.dt == doctest::Approx(0.25));

    CHECK_THROWS_AS(integrate_jet(kFixA, JetState::Zero(), options(-1.0, 1e-3)), InvalidArgument);
    CHECK_THROWS_AS(integrate_jet(kFixA, JetState::Zero(), options(1.0, 0.0)), InvalidArgument);
    CHECK_THROWS_AS(integrate_jet(kFixA, JetState::Zero(), options(1.0, 1e-3, 0)), InvalidArgument);
    CHECK_THROWS_AS(integrate_jet(kFixA, JetState::Zero(), options(1.0, 1e-3), Method::Leapfrog),
                    IncompatibleMethod);
    CHECK_THROWS_AS(parse_method("euler"), InvalidArgument);
    CHECK(parse_method("implicit-midpoint") == Method::ImplicitMidpoint);
}

TEST_CASE("zero state stays at zero")
{
    const Trajectory tr = integrate_jet(kFixC, JetState::Zero(), options(1.0, 1e-2, 10));
    for (const auto& x : tr.states) {
        CHECK(x.isZero(0.0));
    }
}
