#pragma once

#include <json.hpp>

#include "quartic/audit.hpp"
#include "quartic/dynamics.hpp"

namespace quartic::cli {

using Json = nlohmann::ordered_json;

Json to_json(const Parameters& params);
Json to_json(const Eigen::Matrix4d& matrix);
Json to_json(const Eigen::Vector4d& vector);
Json to_json(std::complex<double> value);
Json to_json(const ModeData& modes);
Json to_json(const DeterminantReport& report);
Json to_json(const AuditEntry& entry);
Json to_json(const AuditReport& report);
Json to_json(const InvariantDrift& drift);

/// "(+,+,-,-)" style signature of a symmetric form, positives first.
std::string signature(const Eigen::Matrix4d& form);

/// %.17g
std::string format_double(double value);

} // namespace quartic::cli
