#pragma once

#include <filesystem>
#include <numbers>
#include <optional>
#include <string>

#include "quartic/dynamics.hpp"

namespace quartic::cli {

/// Raised for malformed input files and flag values; maps to exit code 1.
class UsageError : public Error {
public:
    using Error::Error;
};

struct BetaGrid {
    double lo = -std::numbers::pi;
    double hi = std::numbers::pi;
    int n = 100;
    /// Inclusive linspace when true, cell midpoints otherwise.
    bool endpoints = false;

    std::vector<double> points() const;
};

struct Scenario {
    std::optional<double> m;
    std::optional<double> omega_sq;
    std::optional<double> lambda;
    std::optional<double> beta;
    std::optional<JetState> initial;
    IntegrationOptions integration{.t_end = 10.0, .dt = 1e-3, .sample_every = 10};
    std::string method = "rk4";
    std::string canonical_method = "leapfrog";
    std::string trajectory_file = "trajectory.csv";
    std::string report_file = "drift.json";
    BetaGrid grid;

    /// Throws UsageError when m, omega_sq or lambda is missing.
    Parameters parameters() const;
    /// Throws UsageError when beta is missing.
    BetaAngle angle() const;
};

/// Reads a JSON scenario. Unknown keys are rejected.
Scenario load_scenario(const std::filesystem::path& path);

/// Accepts plain numbers and multiples of pi: "0.3", "pi/4", "-3pi/4", "2*pi/3".
double parse_angle(const std::string& text);

/// Parses "q,dq,d2q,d3q".
JetState parse_state(const std::string& text);

/// --output-dir, then QUARTIC_OUTPUT_DIR, then the working directory.
std::filesystem::path output_directory(const std::optional<std::string>& flag);

} // namespace quartic::cli
