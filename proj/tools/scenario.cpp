#include "scenario.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace quartic::cli {

namespace {

using Json = nlohmann::json;

double number(const Json& value, const char* key)
{
    if (!value.is_number()) {
        throw UsageError(std::string("'") + key + "' must be a number");
    }
    return value.get<double>();
}

double angle(const Json& value, const char* key)
{
    if (value.is_string()) {
        return parse_angle(value.get<std::string>());
    }
    return number(value, key);
}

std::string text(const Json& value, const char* key)
{
    if (!value.is_string()) {
        throw UsageError(std::string("'") + key + "' must be a string");
    }
    return value.get<std::string>();
}

void reject_unknown(const Json& object, std::initializer_list<const char*> known, const char* where)
{
    for (const auto& [key, _] : object.items()) {
        bool found = false;
        for (const char* k : known) {
            found = found || key == k;
        }
        if (!found) {
            throw UsageError("unknown key '" + key + "' in " + where);
        }
    }
}

double parse_double(const std::string& token)
{
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(token, &used);
    } catch (const std::exception&) {
        throw UsageError("not a number: '" + token + "'");
    }
    if (used != token.size()) {
        throw UsageError("not a number: '" + token + "'");
    }
    return value;
}

} // namespace

std::vector<double> BetaGrid::points() const
{
    if (n < 1) {
        throw UsageError("the beta grid is empty");
    }
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
        throw UsageError("the beta grid needs finite lo < hi");
    }
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double t = endpoints ? (n == 1 ? 0.0 : static_cast<double>(k) / (n - 1)) : (k + 0.5) / n;
        out.push_back(lo + (hi - lo) * t);
    }
    return out;
}

Parameters Scenario::parameters() const
{
    if (!m || !omega_sq || !lambda) {
        throw UsageError("parameters m, omega2 and lambda are required");
    }
    Parameters p{*m, *omega_sq, *lambda};
    p.validate();
    return p;
}

BetaAngle Scenario::angle() const
{
    if (!beta) {
        throw UsageError("beta is required");
    }
    try {
        return BetaAngle::wrap(*beta);
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
}

Scenario load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read scenario file " + path.string());
    }
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw UsageError("scenario " + path.string() + ": " + e.what());
    }
    if (!doc.is_object()) {
        throw UsageError("scenario must be a JSON object");
    }
    reject_unknown(doc,
                   {"m", "omega_sq", "lambda", "beta", "initial", "t_end", "dt", "sample_every", "method",
                    "canonical_method", "outputs", "scan"},
                   "scenario");

    Scenario s;
    if (doc.contains("m")) s.m = number(doc["m"], "m");
    if (doc.contains("omega_sq")) s.omega_sq = number(doc["omega_sq"], "omega_sq");
    if (doc.contains("lambda")) s.lambda = number(doc["lambda"], "lambda");
    if (doc.contains("beta")) s.beta = angle(doc["beta"], "beta");
    if (doc.contains("initial")) {
        const Json& init = doc["initial"];
        if (!init.is_array() || init.size() != 4) {
            throw UsageError("'initial' must be an array [q, dq, d2q, d3q]");
        }
        JetState jet;
        for (int i = 0; i < 4; ++i) {
            jet(i) = number(init[static_cast<std::size_t>(i)], "initial");
        }
        s.initial = jet;
    }
    if (doc.contains("t_end")) s.integration.t_end = number(doc["t_end"], "t_end");
    if (doc.contains("dt")) s.integration.dt = number(doc["dt"], "dt");
    if (doc.contains("sample_every")) {
        if (!doc["sample_every"].is_number_integer()) {
            throw UsageError("'sample_every' must be an integer");
        }
        s.integration.sample_every = doc["sample_every"].get<int>();
    }
    if (doc.contains("method")) s.method = text(doc["method"], "method");
    if (doc.contains("canonical_method")) s.canonical_method = text(doc["canonical_method"], "canonical_method");
    if (doc.contains("outputs")) {
        const Json& outputs = doc["outputs"];
        reject_unknown(outputs, {"trajectory", "report"}, "outputs");
        if (outputs.contains("trajectory")) s.trajectory_file = text(outputs["trajectory"], "trajectory");
        if (outputs.contains("report")) s.report_file = text(outputs["report"], "report");
    }
    if (doc.contains("scan")) {
        const Json& scan = doc["scan"];
        reject_unknown(scan, {"lo", "hi", "n", "endpoints"}, "scan");
        if (scan.contains("lo")) s.grid.lo = angle(scan["lo"], "lo");
        if (scan.contains("hi")) s.grid.hi = angle(scan["hi"], "hi");
        if (scan.contains("n")) {
            if (!scan["n"].is_number_integer()) {
                throw UsageError("'n' must be an integer");
            }
            s.grid.n = scan["n"].get<int>();
        }
        if (scan.contains("endpoints")) {
            if (!scan["endpoints"].is_boolean()) {
                throw UsageError("'endpoints' must be a boolean");
            }
            s.grid.endpoints = scan["endpoints"].get<bool>();
        }
    }
    return s;
}

double parse_angle(const std::string& raw)
{
    std::string s;
    for (char c : raw) {
        if (c != ' ' && c != '*') {
            s += c;
        }
    }
    const auto at = s.find("pi");
    if (at == std::string::npos) {
        return parse_double(s);
    }
    std::string factor = s.substr(0, at);
    const std::string rest = s.substr(at + 2);
    double scale = 1.0;
    if (factor == "-") {
        scale = -1.0;
    } else if (!factor.empty() && factor != "+") {
        scale = parse_double(factor);
    }
    double value = scale * std::numbers::pi;
    if (!rest.empty()) {
        if (rest.front() != '/') {
            throw UsageError("cannot read angle '" + raw + "'");
        }
        const double divisor = parse_double(rest.substr(1));
        if (divisor == 0.0) {
            throw UsageError("division by zero in angle '" + raw + "'");
        }
        value /= divisor;
    }
    return value;
}

JetState parse_state(const std::string& text)
{
    std::stringstream in(text);
    std::string token;
    std::vector<double> values;
    while (std::getline(in, token, ',')) {
        values.push_back(parse_double(token));
    }
    if (values.size() != 4) {
        throw UsageError("a state needs four comma-separated values q,dq,d2q,d3q");
    }
    return {values[0], values[1], values[2], values[3]};
}

std::filesystem::path output_directory(const std::optional<std::string>& flag)
{
    if (flag) {
        return *flag;
    }
    if (const char* env = std::getenv("QUARTIC_OUTPUT_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return std::filesystem::current_path();
}

} // namespace quartic::cli
