#pragma once

#include <string>

#include "entrolab/estimator.hpp"

namespace entrolab {

// Serialized forms of the reports. Keys are emitted in insertion order and
// doubles in shortest round-trip form, so identical runs give identical bytes.
std::string report_to_json(const EntropyReport& r);
std::string variational_to_json(const VariationalAuditReport& r);

// One row per (series, n): series label, n, count (empty for measure series),
// log_count, h_n = log_count / n.
std::string report_to_csv(const EntropyReport& r);

// Writes content to path via a temp file and rename, creating parent
// directories. A crashed run never leaves a half-written report.
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace entrolab
