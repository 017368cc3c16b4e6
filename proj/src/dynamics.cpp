#include "quartic/dynamics.hpp"

#include <chrono>
#include <cmath>
#include <functional>

#include <Eigen/LU>
#include <unsupported/Eigen/MatrixFunctions>

namespace quartic {

namespace {

using Clock = std::chrono::steady_clock;
using Step = std::function<Eigen::Vector4d(const Eigen::Vector4d&)>;

struct Grid {
    long long steps = 0;
    double dt = 0.0;
};

Grid make_grid(const IntegrationOptions& options)
{
    if (!std::isfinite(options.t_end) || options.t_end <= 0.0) {
        throw InvalidArgument("t_end must be positive and finite");
    }
    if (!std::isfinite(options.dt) || options.dt <= 0.0) {
        throw InvalidArgument("dt must be positive and finite");
    }
    if (options.sample_every < 1) {
        throw InvalidArgument("sample_every must be at least 1");
    }
    const double ratio = options.t_end / options.dt;
    if (ratio > 1e10) {
        throw InvalidArgument("too many steps");
    }
    const auto steps = std::max(1LL, static_cast<long long>(std::ceil(ratio - 1e-9)));
    return {steps, options.t_end / static_cast<double>(steps)};
}

bool stored(long long step, const Grid& grid, int every)
{
    return step % every == 0 || step == grid.steps;
}

Trajectory march(const Eigen::Vector4d& x0, const IntegrationOptions& options, const Step& step)
{
    const Grid grid = make_grid(options);
    const auto start = Clock::now();
    Trajectory out;
    out.dt = grid.dt;
    Eigen::Vector4d x = x0;
    out.times.push_back(0.0);
    out.states.push_back(x);
    for (long long n = 1; n <= grid.steps; ++n) {
        x = step(x);
        if (stored(n, grid, options.sample_every)) {
            out.times.push_back(static_cast<double>(n) * grid.dt);
            out.states.push_back(x);
        }
    }
    out.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return out;
}

// Closed-form flow evaluated at every stored time, so rounding does not accumulate.
Trajectory sample(const Eigen::Vector4d& x0, const IntegrationOptions& options,
                  const std::function<Eigen::Matrix4d(double)>& flow)
{
    const Grid grid = make_grid(options);
    const auto start = Clock::now();
    Trajectory out;
    out.dt = grid.dt;
    for (long long n = 0; n <= grid.steps; ++n) {
        if (stored(n, grid, options.sample_every)) {
            const double t = static_cast<double>(n) * grid.dt;
            out.times.push_back(t);
            out.states.push_back(n == 0 ? x0 : Eigen::Vector4d(flow(t) * x0));
        }
    }
    out.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return out;
}

Step rk4_step(const Eigen::Matrix4d& a, double h)
{
    return [a, h](const Eigen::Vector4d& x) -> Eigen::Vector4d {
        const Eigen::Vector4d k1 = a * x;
        const Eigen::Vector4d k2 = a * (x + 0.5 * h * k1);
        const Eigen::Vector4d k3 = a * (x + 0.5 * h * k2);
        const Eigen::Vector4d k4 = a * (x + h * k3);
        return x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    };
}

// For linear flows the implicit midpoint rule is the Cayley transform of h A.
Step midpoint_step(const Eigen::Matrix4d& a, double h)
{
    const Eigen::Matrix4d identity = Eigen::Matrix4d::Identity();
    const Eigen::Matrix4d update = (identity - 0.5 * h * a).partialPivLu().solve(identity + 0.5 * h * a);
    return [update](const Eigen::Vector4d& x) -> Eigen::Vector4d { return update * x; };
}

// Stormer-Verlet for H = p^T T p + q^T V q with (q1, p1, q2, p2) ordering.
Step leapfrog_step(const Eigen::Matrix4d& k, double h)
{
    Eigen::Matrix2d kinetic, potential;
    kinetic << k(1, 1), k(1, 3), k(3, 1), k(3, 3);
    potential << k(0, 0), k(0, 2), k(2, 0), k(2, 2);
    return [kinetic, potential, h](const Eigen::Vector4d& x) -> Eigen::Vector4d {
        Eigen::Vector2d q(x(0), x(2));
        Eigen::Vector2d p(x(1), x(3));
        p -= h * potential * q;
        q += 2.0 * h * kinetic * p;
        p -= h * potential * q;
        return {q(0), p(0), q(1), p(1)};
    };
}

bool separable(const Eigen::Matrix4d& k)
{
    for (int i : {0, 2}) {
        for (int j : {1, 3}) {
            if (k(i, j) != 0.0 || k(j, i) != 0.0) {
                return false;
            }
        }
    }
    return true;
}

Eigen::Matrix4d canonical_generator(const Eigen::Matrix4d& k)
{
    return standard_symplectic() * 2.0 * k;
}

double term_scale(const Eigen::Matrix4d& form, const Eigen::Vector4d& x)
{
    return quadratic_term_scale(form, x);
}

} // namespace

std::string_view to_string(Method method)
{
    switch (method) {
    case Method::RK4: return "rk4";
    case Method::Leapfrog: return "leapfrog";
    case Method::ImplicitMidpoint: return "implicit-midpoint";
    case Method::Exact: return "exact";
    }
    return "unknown";
}

Method parse_method(std::string_view name)
{
    for (Method m : {Method::RK4, Method::Leapfrog, Method::ImplicitMidpoint, Method::Exact}) {
        if (name == to_string(m)) {
            return m;
        }
    }
    throw InvalidArgument("unknown method '" + std::string(name) + "'");
}

Eigen::Matrix4d exact_propagator(const Parameters& params, double dt)
{
    if (!std::isfinite(dt)) {
        throw InvalidArgument("dt must be finite");
    }
    const ModeData modes = mode_frequencies(params);
    if (modes.regime == Regime::Harmonic) {
        const double w = std::sqrt(params.omega_sq);
        Eigen::Matrix2d rotation;
        rotation << std::cos(w * dt), std::sin(w * dt) / w, -w * std::sin(w * dt), std::cos(w * dt);
        Eigen::Matrix4d out = Eigen::Matrix4d::Zero();
        out.topLeftCorner<2, 2>() = rotation;
        out.bottomRightCorner<2, 2>() = rotation;
        return out;
    }
    const Eigen::Matrix4d start = mode_basis(modes, 0.0, 4);
    const Eigen::Matrix4d later = mode_basis(modes, dt, 4);
    // Phi = B(dt) B(0)^{-1}, i.e. solve Phi B(0) = B(dt).
    return start.transpose().partialPivLu().solve(later.transpose()).transpose();
}

Trajectory integrate_jet(const Parameters& params, const JetState& jet0, const IntegrationOptions& options,
                         Method method)
{
    Trajectory out;
    switch (method) {
    case Method::RK4: out = march(jet0, options, rk4_step(jet_generator(params), make_grid(options).dt)); break;
    case Method::Exact:
        out = sample(jet0, options, [&params](double t) { return exact_propagator(params, t); });
        break;
    default:
        throw IncompatibleMethod("jet-space integration supports rk4 and exact, not "
                                 + std::string(to_string(method)));
    }
    out.kind = StateKind::Jet;
    out.method = method;
    return out;
}

Eigen::Matrix4d canonical_flow(const Parameters& params, BetaAngle beta, double t)
{
    const Eigen::Matrix4d a = canonical_generator(darboux_map(params, beta).hamiltonian_form);
    return Eigen::Matrix4d(a * t).exp();
}

Trajectory integrate_canonical(const Parameters& params, BetaAngle beta, const CanonicalState& canon0,
                               const IntegrationOptions& options, Method method)
{
    const Eigen::Matrix4d k = darboux_map(params, beta).hamiltonian_form;
    const Eigen::Matrix4d a = canonical_generator(k);
    const double h = make_grid(options).dt;
    Trajectory out;
    switch (method) {
    case Method::RK4: out = march(canon0, options, rk4_step(a, h)); break;
    case Method::ImplicitMidpoint: out = march(canon0, options, midpoint_step(a, h)); break;
    case Method::Leapfrog:
        if (!separable(k)) {
            throw IncompatibleMethod("leapfrog needs a Hamiltonian without q-p cross terms");
        }
        out = march(canon0, options, leapfrog_step(k, h));
        break;
    case Method::Exact:
        out = sample(canon0, options, [&a](double t) { return Eigen::Matrix4d(Eigen::Matrix4d(a * t).exp()); });
        break;
    }
    out.kind = StateKind::Canonical;
    out.method = method;
    return out;
}

double cross_check(const Parameters& params, BetaAngle beta, const JetState& jet0, const CrossCheckOptions& options)
{
    const DarbouxMap map = darboux_map(params, beta);
    const Trajectory jet = integrate_jet(params, jet0, options.integration, options.jet_method);
    const Trajectory canon =
        integrate_canonical(params, beta, map.forward * jet0, options.integration, options.canonical_method);
    double worst = 0.0;
    for (std::size_t i = 0; i < jet.states.size(); ++i) {
        const Eigen::Vector4d back = map.inverse * canon.states[i];
        worst = std::max(worst, (back - jet.states[i]).cwiseAbs().maxCoeff());
    }
    return worst;
}

const InvariantDrift& DriftReport::find(std::string_view name) const
{
    for (const auto& entry : invariants) {
        if (entry.name == name) {
            return entry;
        }
    }
    throw InvalidArgument("no invariant named '" + std::string(name) + "'");
}

double DriftReport::worst_scaled_drift() const
{
    double worst = 0.0;
    for (const auto& entry : invariants) {
        worst = std::max(worst, entry.max_scaled_drift);
    }
    return worst;
}

DriftReport drift_report(const Parameters& params, BetaAngle beta, const Trajectory& trajectory)
{
    DriftReport out;
    out.wall_seconds = trajectory.wall_seconds;
    if (trajectory.states.empty()) {
        return out;
    }

    std::vector<Eigen::Vector4d> jets = trajectory.states;
    if (trajectory.kind == StateKind::Canonical) {
        const Eigen::Matrix4d inverse = darboux_map(params, beta).inverse;
        for (auto& x : jets) {
            x = inverse * x;
        }
    }

    const IntegralForms forms = integral_forms(params);
    const std::pair<const char*, Eigen::Matrix4d> quadratic[] = {
        {"k1", forms.first}, {"k2", forms.second}, {"H", hamiltonian_form(params, beta)}};
    for (const auto& [name, form] : quadratic) {
        InvariantDrift drift;
        drift.name = name;
        const double initial = jets.front().dot(form * jets.front());
        for (const auto& x : jets) {
            const double value = x.dot(form * x);
            const double change = std::abs(value - initial);
            const double scale = std::max(std::abs(initial), term_scale(form, x));
            drift.series.push_back(value);
            drift.max_absolute_drift = std::max(drift.max_absolute_drift, change);
            if (change > 0.0) {
                drift.max_scaled_drift = std::max(drift.max_scaled_drift, change / scale);
                drift.max_relative_drift = std::max(drift.max_relative_drift, change / std::abs(initial));
            }
        }
        out.invariants.push_back(std::move(drift));
    }

    if (classify_regime(params) == Regime::OscillatoryDistinct) {
        out.ratio = rational_ratio(params, kRatioSearchDenominator);
    }
    if (out.ratio) {
        InvariantDrift drift;
        drift.name = "C";
        const double initial = third_integral(params, *out.ratio, jets.front());
        for (const auto& x : jets) {
            const double value = third_integral(params, *out.ratio, x);
            const double change = std::abs(value - initial);
            drift.series.push_back(value);
            drift.max_absolute_drift = std::max(drift.max_absolute_drift, change);
        }
        drift.max_scaled_drift = drift.max_absolute_drift;
        drift.max_relative_drift = drift.max_absolute_drift;
        out.invariants.push_back(std::move(drift));
    }
    return out;
}

} // namespace quartic
