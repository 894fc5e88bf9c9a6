#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "minigraph/geometry.hpp"
#include "minigraph/isothermal.hpp"
#include "minigraph/jacobian.hpp"
#include "minigraph/slag.hpp"
#include "minigraph/weierstrass.hpp"

namespace minigraph::report {

// Key order is fixed at insertion so identical inputs serialize to identical
// bytes, which the selftest determinism contract relies on.
using json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "minigraph";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kSchemaId = "minigraph-report/0.1.0";

json to_json(const Point2& p);
json to_json(const std::vector<PointError>& errors);
json to_json(const geometry::MinimalityReport& r);
json to_json(const jacobian::CrReport& r);
json to_json(const jacobian::RangeEvidence& r);
json to_json(const weierstrass::ConstructionReport& r);
json to_json(const isothermal::ShearParams& r);

// Envelope shared by every subcommand; see docs/report.schema.json.
json envelope(const std::string& command, const std::vector<std::string>& argv,
              json inputs, json result, const std::string& verdict,
              const std::vector<PointError>& errors, long seed = 0);

std::string format_double(double v);  // shortest round-trip decimal form

// CSV writers for the --dump outputs. Columns are part of the CLI contract.
std::string csv_minimality(const std::vector<geometry::MinimalitySample>& samples);
std::string csv_jacobian(const std::vector<std::array<double, 3>>& samples);
std::string csv_surface(const weierstrass::ConstructedSurface& surface);

}  // namespace minigraph::report
