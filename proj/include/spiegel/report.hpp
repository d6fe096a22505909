#pragma once

#include <string>

#include "json.hpp"
#include "spiegel/spiegel.hpp"

namespace spiegel {

inline constexpr int kReportSchemaVersion = 1;

nlohmann::ordered_json to_json(const SpiegelReport& r);
/// Serialized JSON with a trailing newline; stable byte-for-byte for equal reports.
std::string render_json(const SpiegelReport& r);
std::string render_markdown(const SpiegelReport& r);

}  // namespace spiegel
