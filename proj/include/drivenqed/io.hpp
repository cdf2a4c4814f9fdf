#pragma once

// JSON configuration, state/result serialization and CSV writers.

#include "drivenqed/analysis.hpp"
#include "drivenqed/protocols.hpp"

#include "json.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace drivenqed {

using Json = nlohmann::ordered_json;

// Parses and validates a protocol configuration. Unknown keys are rejected;
// errors are ConfigError with the offending field path.
ProtocolConfig parse_config(std::string_view text);
ProtocolConfig load_config(const std::string& path);
Json config_to_json(const ProtocolConfig& config);

// {"layout": [...], "re": [...], "im": [...]}
Json ket_to_json(const Ket& psi);
Ket ket_from_json(const Json& j);
Json layout_to_json(const HilbertLayout& layout);
HilbertLayout layout_from_json(const Json& j);

Json result_to_json(const ProtocolResult& result);

enum class ExportFormat { Json, Csv };
ExportFormat format_from_string(std::string_view name);

// Header `t,<metric>...` then one row per sample time.
std::string metrics_csv(const MetricTable& metrics);
void export_result(const ProtocolResult& result, ExportFormat format, const std::string& path);

enum class StateSelector { Final, PostMeasurement };
// Reads a bare state document or a protocol result (last sampled state, or
// the post-measurement state).
Ket load_state(const std::string& path, StateSelector which = StateSelector::Final);

// "lo:hi:step".
GridAxis parse_grid_spec(std::string_view spec);

// First row: "p\x" then the x axis; then one row per p value.
std::string wigner_csv(const WignerGrid& grid);
std::string sweep_csv(const std::vector<SweepRow>& rows, SweepMetric metric);
// Nonzero entries as row,col,re,im.
std::string operator_csv(const Operator& op);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace drivenqed
