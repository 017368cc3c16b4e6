#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "cli.hpp"
#include "report_json.hpp"
#include "scenario.hpp"

namespace quartic::cli {

namespace {

struct Flags {
    std::optional<std::string> scenario;
    std::optional<double> m;
    std::optional<double> omega_sq;
    std::optional<double> lambda;
    std::optional<std::string> beta;
    std::optional<std::string> state;
    std::optional<double> t_end;
    std::optional<double> dt;
    std::optional<int> sample_every;
    std::optional<std::string> method;
    std::optional<std::string> canonical_method;
    std::optional<std::string> output_dir;
    std::optional<std::string> trajectory;
    std::optional<std::string> report;
    std::optional<std::string> output;
    std::optional<std::string> lo;
    std::optional<std::string> hi;
    std::optional<int> n;
    bool endpoints = false;
    unsigned threads = 0;
};

void add_parameter_options(CLI::App* sub, Flags& f)
{
    sub->add_option("--scenario", f.scenario, "JSON scenario file; flags override its fields");
    sub->add_option("--m", f.m, "mass m > 0");
    sub->add_option("--omega2", f.omega_sq, "omega^2 > 0");
    sub->add_option("--lambda", f.lambda, "higher-derivative coupling");
}

void add_beta_option(CLI::App* sub, Flags& f, const char* help)
{
    sub->add_option("--beta", f.beta, help);
}

Scenario resolve(const Flags& f)
{
    Scenario s = f.scenario ? load_scenario(*f.scenario) : Scenario{};
    if (f.m) s.m = f.m;
    if (f.omega_sq) s.omega_sq = f.omega_sq;
    if (f.lambda) s.lambda = f.lambda;
    if (f.beta) s.beta = parse_angle(*f.beta);
    if (f.state) s.initial = parse_state(*f.state);
    if (f.t_end) s.integration.t_end = *f.t_end;
    if (f.dt) s.integration.dt = *f.dt;
    if (f.sample_every) s.integration.sample_every = *f.sample_every;
    if (f.method) s.method = *f.method;
    if (f.canonical_method) s.canonical_method = *f.canonical_method;
    if (f.trajectory) s.trajectory_file = *f.trajectory;
    if (f.report) s.report_file = *f.report;
    if (f.lo) s.grid.lo = parse_angle(*f.lo);
    if (f.hi) s.grid.hi = parse_angle(*f.hi);
    if (f.n) s.grid.n = *f.n;
    if (f.endpoints) s.grid.endpoints = true;
    return s;
}

std::string sector_list(Regime regime)
{
    std::string out;
    for (const Sector& sector : sectors_of(regime)) {
        out += (out.empty() ? "" : " ") + sector.label();
    }
    return out;
}

/// beta with its sector, or SingularBeta carrying the admissible sectors.
std::pair<BetaAngle, Sector> admissible(const Parameters& params, const Scenario& s)
{
    const BetaAngle beta = s.angle();
    const Regime regime = classify_regime(params);
    try {
        return {beta, sector_of(beta, regime)};
    } catch (const SingularBeta& e) {
        throw SingularBeta(std::string(e.what()) + "; admissible sectors for regime (" + std::string(roman_label(regime))
                           + "): " + sector_list(regime));
    }
}

void warn_near_degenerate(const Parameters& params, std::ostream& err)
{
    if (near_degenerate(params)) {
        err << "warning: parameters are within 1e-9 of the degenerate boundary; results are ill-conditioned\n";
    }
}

void print(std::ostream& out, const Json& doc) { out << doc.dump(2) << '\n'; }

void write_file(const std::filesystem::path& path, const std::string& content)
{
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw UsageError("cannot write " + path.string());
    }
    file << content;
}

Json integral_names(Regime regime)
{
    switch (regime) {
    case Regime::OscillatoryDistinct: return {"J1", "J2"};
    case Regime::ComplexPair: return {"Re J1", "Im J1"};
    default: return {"I1", "I2"};
    }
}

int cmd_classify(const Flags& f, std::ostream& out, std::ostream& err)
{
    const Parameters params = resolve(f).parameters();
    warn_near_degenerate(params, err);
    const ModeData modes = mode_frequencies(params);
    Json doc = {{"params", to_json(params)},
                {"regime", std::string(to_string(modes.regime))},
                {"regime_label", std::string(roman_label(modes.regime))},
                {"near_degenerate", near_degenerate(params)},
                {"modes", to_json(modes)}};
    if (modes.regime != Regime::Harmonic) {
        const std::complex<double> r1 = modes.root1();
        const std::complex<double> r2 = modes.root2();
        doc["identities"] = {{"sum_residual", std::abs(params.lambda * (r1 + r2) - 1.0)},
                             {"product_residual", std::abs(params.lambda * r1 * r2 - params.omega_sq)}};
        Json sectors = Json::array();
        for (const Sector& sector : sectors_of(modes.regime)) {
            sectors.push_back(sector.label());
        }
        doc["sectors"] = std::move(sectors);
    }
    print(out, doc);
    return kOk;
}

int cmd_simulate(const Flags& f, std::ostream& out, std::ostream& err)
{
    const Scenario s = resolve(f);
    const Parameters params = s.parameters();
    warn_near_degenerate(params, err);
    if (classify_regime(params) == Regime::Harmonic) {
        throw UnsupportedRegime("simulate reports the lambda-dependent integrals, which the harmonic regime lacks");
    }
    const auto [beta, sector] = admissible(params, s);
    const Method jet_method = parse_method(s.method);
    const Method canonical_method = parse_method(s.canonical_method);
    const JetState jet0 = s.initial.value_or(JetState(1.0, 0.0, 0.0, 0.0));

    const Trajectory jet = integrate_jet(params, jet0, s.integration, jet_method);
    const DriftReport drift = drift_report(params, beta, jet);
    const Trajectory canonical =
        integrate_canonical(params, beta, to_canonical(params, beta, jet0), s.integration, canonical_method);
    const DriftReport canonical_drift = drift_report(params, beta, canonical);
    const double discrepancy = cross_check(params, beta, jet0,
                                           {.integration = s.integration,
                                            .jet_method = jet_method,
                                            .canonical_method = canonical_method});

    std::ostringstream csv;
    csv << "t,q,dq,d2q,d3q,J1,J2,H" << (drift.ratio ? ",C" : "") << '\n';
    for (std::size_t i = 0; i < jet.states.size(); ++i) {
        csv << format_double(jet.times[i]);
        for (int k = 0; k < 4; ++k) {
            csv << ',' << format_double(jet.states[i](k));
        }
        for (const auto& invariant : drift.invariants) {
            csv << ',' << format_double(invariant.series[i]);
        }
        csv << '\n';
    }

    Json invariants = Json::object();
    for (const auto& invariant : drift.invariants) {
        invariants[invariant.name] = to_json(invariant);
    }
    const auto steps = static_cast<long long>(std::llround(s.integration.t_end / jet.dt));
    Json doc = {{"params", to_json(params)},
                {"regime", std::string(to_string(classify_regime(params)))},
                {"beta", beta.value()},
                {"sector", sector.label()},
                {"initial", to_json(jet0)},
                {"integration",
                 {{"t_end", s.integration.t_end},
                  {"requested_dt", s.integration.dt},
                  {"dt", jet.dt},
                  {"steps", steps},
                  {"sample_every", s.integration.sample_every},
                  {"samples", jet.states.size()}}},
                {"integral_names", integral_names(classify_regime(params))},
                {"jet", {{"method", std::string(to_string(jet_method))}, {"drift", std::move(invariants)}}},
                {"canonical",
                 {{"method", std::string(to_string(canonical_method))},
                  {"drift", {{"H", to_json(canonical_drift.find("H"))}}}}},
                {"cross_check", {{"sup_norm", discrepancy}}}};
    if (drift.ratio) {
        doc["jet"]["ratio"] = {drift.ratio->k, drift.ratio->l};
    }
    doc["files"] = {{"trajectory", s.trajectory_file}, {"report", s.report_file}};

    const std::filesystem::path dir = output_directory(f.output_dir);
    write_file(dir / s.trajectory_file, csv.str());
    write_file(dir / s.report_file, doc.dump(2) + "\n");
    print(out, doc);
    return kOk;
}

int cmd_verify(const Flags& f, std::ostream& out, std::ostream& err)
{
    const Parameters params = resolve(f).parameters();
    warn_near_degenerate(params, err);
    const AuditReport report = run_audit(params);
    print(out, to_json(report));
    if (report.any_failed()) {
        err << "verify: at least one audit entry failed\n";
        return kAuditFailure;
    }
    return kOk;
}

std::string scan_row(const Parameters& params, Regime regime, double b)
{
    const BetaAngle beta(b);
    std::string row = format_double(b);
    if (!beta_admissible(beta, regime)) {
        return row + ",excluded,,,,,,,,,,";
    }
    const BracketMatrix brackets = bracket_matrix(params, beta);
    const DarbouxMap map = darboux_map(params, beta);
    const DeterminantReport det = bracket_determinant(brackets);
    std::string extra;
    if (regime == Regime::OscillatoryDistinct && map.sector.kind == SectorKind::FourthQuadrant) {
        if (const auto w = extra_mode_frequency(params, beta).omega_sq) {
            extra = format_double(*w);
        }
    }
    const Eigen::Matrix4d& pi = brackets.pi;
    row += ',' + map.sector.label();
    for (double v : {pi(0, 1), pi(0, 3), pi(1, 2), pi(2, 3), det.numeric, map.delta, map.epsilon.real(),
                     map.epsilon.imag()}) {
        row += ',' + format_double(v);
    }
    row += ',' + extra + ',' + '"' + signature(map.hamiltonian_form) + '"';
    return row;
}

int cmd_scan_beta(const Flags& f, std::ostream& out, std::ostream& err)
{
    const Scenario s = resolve(f);
    const Parameters params = s.parameters();
    warn_near_degenerate(params, err);
    const Regime regime = classify_regime(params);
    if (regime == Regime::Harmonic) {
        throw UnsupportedRegime("the harmonic regime has no beta family");
    }
    std::vector<double> betas = s.grid.points();
    for (double& b : betas) {
        b = BetaAngle::wrap(b).value();
    }

    std::vector<std::string> rows(betas.size());
    const unsigned hardware = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = std::min<std::size_t>(f.threads > 0 ? f.threads : hardware, betas.size());
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> failures(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < betas.size(); i += workers) {
                    rows[i] = scan_row(params, regime, betas[i]);
                }
            } catch (...) {
                failures[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    for (const auto& failure : failures) {
        if (failure) {
            std::rethrow_exception(failure);
        }
    }

    std::ostringstream csv;
    csv << "beta,sector,q_dq,q_d3q,dq_d2q,d2q_d3q,determinant,delta,epsilon_re,epsilon_im,extra_mode_omega_sq,"
           "signature\n";
    for (const auto& row : rows) {
        csv << row << '\n';
    }
    if (f.output && *f.output != "-") {
        write_file(output_directory(f.output_dir) / *f.output, csv.str());
    } else {
        out << csv.str();
    }
    return kOk;
}

int cmd_integrals(const Flags& f, std::ostream& out, std::ostream& err)
{
    const Scenario s = resolve(f);
    const Parameters params = s.parameters();
    warn_near_degenerate(params, err);
    const JetState jet = s.initial.value_or(JetState(1.0, 0.0, 0.0, 0.0));
    const Regime regime = classify_regime(params);
    const IntegralPair pair = integrals_of_motion(params, jet);
    Json doc = {{"params", to_json(params)},
                {"regime", std::string(to_string(regime))},
                {"state", to_json(jet)},
                {"names", integral_names(regime)},
                {"values", {pair.k1, pair.k2}}};
    if (s.beta) {
        const auto [beta, sector] = admissible(params, s);
        doc["beta"] = beta.value();
        doc["sector"] = sector.label();
        doc["H"] = hamiltonian_value(params, beta, jet);
    }
    if (regime == Regime::OscillatoryDistinct) {
        if (const auto ratio = rational_ratio(params, kRatioSearchDenominator)) {
            doc["ratio"] = {ratio->k, ratio->l};
            doc["C"] = third_integral(params, *ratio, jet);
        }
    }
    print(out, doc);
    return kOk;
}

int cmd_brackets(const Flags& f, std::ostream& out, std::ostream& err)
{
    const Scenario s = resolve(f);
    const Parameters params = s.parameters();
    warn_near_degenerate(params, err);
    const auto [beta, sector] = admissible(params, s);
    const BracketMatrix brackets = bracket_matrix(params, beta);
    Json mode = Json::array();
    for (const auto& value : mode_combination_brackets(params, beta)) {
        mode.push_back(to_json(value));
    }
    const Json doc = {{"params", to_json(params)},
                      {"regime", std::string(to_string(brackets.regime))},
                      {"beta", beta.value()},
                      {"sector", sector.label()},
                      {"basis", {"q", "dq", "d2q", "d3q"}},
                      {"pi", to_json(brackets.pi)},
                      {"gamma", to_json(brackets.gamma)},
                      {"determinant", to_json(bracket_determinant(brackets))},
                      {"mode_brackets", std::move(mode)}};
    print(out, doc);
    return kOk;
}

int cmd_darboux(const Flags& f, std::ostream& out, std::ostream& err)
{
    const Scenario s = resolve(f);
    const Parameters params = s.parameters();
    warn_near_degenerate(params, err);
    const auto [beta, sector] = admissible(params, s);
    const DarbouxMap map = darboux_map(params, beta);
    const CanonicityReport canon = verify_canonicity(params, beta);
    Json doc = {{"params", to_json(params)},
                {"regime", std::string(to_string(classify_regime(params)))},
                {"beta", beta.value()},
                {"sector", sector.label()},
                {"forward", to_json(map.forward)},
                {"inverse", to_json(map.inverse)},
                {"hamiltonian_form", to_json(map.hamiltonian_form)},
                {"signature", signature(map.hamiltonian_form)},
                {"delta", map.delta},
                {"epsilon", to_json(map.epsilon)},
                {"canonicity",
                 {{"residual", canon.residual}, {"inverse_residual", canon.inverse_residual}, {"canonical", canon.canonical}}}};
    if (s.initial) {
        const CanonicalState x = map.forward * *s.initial;
        doc["state"] = to_json(*s.initial);
        doc["canonical_state"] = to_json(x);
        doc["H_canonical"] = x.dot(map.hamiltonian_form * x);
        doc["H_jet"] = hamiltonian_value(params, beta, *s.initial);
    }
    print(out, doc);
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Pais-Uhlenbeck quartic oscillator: regimes, Poisson structures, Darboux charts and audits",
                 "quartic"};
    app.require_subcommand(1);
    Flags f;

    auto* classify = app.add_subcommand("classify", "regime, mode frequencies and identity checks");
    add_parameter_options(classify, f);

    auto* simulate = app.add_subcommand("simulate", "integrate a scenario; write trajectory CSV and drift JSON");
    add_parameter_options(simulate, f);
    add_beta_option(simulate, f, "structure angle, e.g. 0.3 or pi/4");
    simulate->add_option("--state", f.state, "initial jet q,dq,d2q,d3q");
    simulate->add_option("--t-end", f.t_end, "horizon");
    simulate->add_option("--dt", f.dt, "step");
    simulate->add_option("--sample-every", f.sample_every, "store every k-th step");
    simulate->add_option("--method", f.method, "jet method: rk4 or exact");
    simulate->add_option("--canonical-method", f.canonical_method,
                         "canonical method: leapfrog, implicit-midpoint, rk4 or exact");
    simulate->add_option("--output-dir", f.output_dir, "directory for output files");
    simulate->add_option("--trajectory", f.trajectory, "trajectory CSV file name");
    simulate->add_option("--report", f.report, "drift report JSON file name");

    auto* verify = app.add_subcommand("verify", "run every audit for the parameters; exit 4 on failure");
    add_parameter_options(verify, f);

    auto* scan = app.add_subcommand("scan-beta", "tabulate the structure family over a beta grid");
    add_parameter_options(scan, f);
    scan->add_option("--lo", f.lo, "grid start (default -pi)");
    scan->add_option("--hi", f.hi, "grid end (default pi)");
    scan->add_option("--n", f.n, "number of grid points (default 100)");
    scan->add_flag("--endpoints", f.endpoints, "inclusive linspace instead of cell midpoints");
    scan->add_option("--threads", f.threads, "worker threads (default: hardware)");
    scan->add_option("--output", f.output, "CSV file name; stdout when absent or '-'");
    scan->add_option("--output-dir", f.output_dir, "directory for the output file");

    auto* integrals = app.add_subcommand("integrals", "integrals of motion at a state");
    add_parameter_options(integrals, f);
    add_beta_option(integrals, f, "also evaluate H(beta)");
    integrals->add_option("--state", f.state, "jet q,dq,d2q,d3q (default 1,0,0,0)");

    auto* brackets = app.add_subcommand("brackets", "bracket matrix, determinant and mode-combination brackets");
    add_parameter_options(brackets, f);
    add_beta_option(brackets, f, "structure angle");

    auto* darboux = app.add_subcommand("darboux", "Darboux chart for one beta");
    add_parameter_options(darboux, f);
    add_beta_option(darboux, f, "structure angle");
    darboux->add_option("--state", f.state, "jet to map to canonical coordinates");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*classify) return cmd_classify(f, out, err);
        if (*simulate) return cmd_simulate(f, out, err);
        if (*verify) return cmd_verify(f, out, err);
        if (*scan) return cmd_scan_beta(f, out, err);
        if (*integrals) return cmd_integrals(f, out, err);
        if (*brackets) return cmd_brackets(f, out, err);
        if (*darboux) return cmd_darboux(f, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const IncompatibleMethod& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const SingularBeta& e) {
        err << "error: " << e.what() << '\n';
        return kInadmissibleBeta;
    } catch (const WrongSector& e) {
        err << "error: " << e.what() << '\n';
        return kInadmissibleBeta;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidParameters;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

} // namespace quartic::cli
