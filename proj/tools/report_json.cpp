#include "report_json.hpp"

#include <cstdio>

#include <Eigen/Eigenvalues>

namespace quartic::cli {

Json to_json(const Parameters& params)
{
    return {{"m", params.m}, {"omega_sq", params.omega_sq}, {"lambda", params.lambda}};
}

Json to_json(const Eigen::Matrix4d& matrix)
{
    Json rows = Json::array();
    for (int i = 0; i < 4; ++i) {
        rows.push_back({matrix(i, 0), matrix(i, 1), matrix(i, 2), matrix(i, 3)});
    }
    return rows;
}

Json to_json(const Eigen::Vector4d& vector) { return {vector(0), vector(1), vector(2), vector(3)}; }

Json to_json(std::complex<double> value) { return {value.real(), value.imag()}; }

Json to_json(const ModeData& modes)
{
    switch (modes.regime) {
    case Regime::Harmonic: return {{"omega_sq", modes.omega1_sq}};
    case Regime::ComplexPair: return {{"omega0_sq", to_json(modes.omega0_sq)}};
    default: return {{"omega1_sq", modes.omega1_sq}, {"omega2_sq", modes.omega2_sq}};
    }
}

Json to_json(const DeterminantReport& report)
{
    Json out = {{"numeric", report.numeric}, {"pfaffian_square", report.pfaffian_square}};
    if (report.derived_closed_form) {
        out["derived_closed_form"] = *report.derived_closed_form;
    }
    if (report.printed_closed_form) {
        out["printed_closed_form"] = *report.printed_closed_form;
        out["printed_discrepancy"] = report.printed_discrepancy;
    }
    return out;
}

Json to_json(const AuditEntry& entry)
{
    Json out = {{"id", entry.id},
                {"description", entry.description},
                {"status", std::string(to_string(entry.status))},
                {"residual", entry.residual}};
    if (!entry.printed_form.empty()) {
        out["printed_form"] = entry.printed_form;
    }
    if (!entry.corrected_form.empty()) {
        out["corrected_form"] = entry.corrected_form;
    }
    if (!entry.terms.empty()) {
        Json terms = Json::array();
        for (const auto& t : entry.terms) {
            terms.push_back({{"term", t.term}, {"printed", t.printed}, {"measured", t.measured}, {"matches", t.matches}});
        }
        out["terms"] = std::move(terms);
    }
    if (!entry.diagnostics.empty()) {
        Json diagnostics = Json::object();
        for (const auto& d : entry.diagnostics) {
            diagnostics[d.name] = d.value;
        }
        out["diagnostics"] = std::move(diagnostics);
    }
    if (!entry.notes.empty()) {
        out["notes"] = entry.notes;
    }
    return out;
}

Json to_json(const AuditReport& report)
{
    int counts[3] = {0, 0, 0};
    Json entries = Json::array();
    for (const auto& entry : report.entries) {
        ++counts[static_cast<int>(entry.status)];
        entries.push_back(to_json(entry));
    }
    return {{"params", to_json(report.params)},
            {"regime", std::string(to_string(report.regime))},
            {"regime_label", std::string(roman_label(report.regime))},
            {"summary", {{"verified", counts[0]}, {"corrected_coefficients", counts[1]}, {"failed", counts[2]}}},
            {"entries", std::move(entries)}};
}

Json to_json(const InvariantDrift& drift)
{
    return {{"max_relative_drift", drift.max_relative_drift},
            {"max_scaled_drift", drift.max_scaled_drift},
            {"max_absolute_drift", drift.max_absolute_drift}};
}

std::string signature(const Eigen::Matrix4d& form)
{
    const Eigen::Vector4d eig = Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(form).eigenvalues();
    const double tol = 1e-12 * eig.cwiseAbs().maxCoeff();
    int positive = 0, negative = 0;
    for (int i = 0; i < 4; ++i) {
        positive += eig(i) > tol;
        negative += eig(i) < -tol;
    }
    std::string out = "(";
    for (int i = 0; i < 4; ++i) {
        out += i < positive ? "+" : (i < positive + negative ? "-" : "0");
        out += i < 3 ? "," : ")";
    }
    return out;
}

std::string format_double(double value)
{
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

} // namespace quartic::cli
