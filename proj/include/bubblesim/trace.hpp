#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "bubblesim/engine.hpp"
#include "bubblesim/metrics.hpp"

namespace bubblesim {

// Line-delimited trace stream: a meta line followed by one record per line
// in timeline order, then dispositions and the makespan. Byte-stable for
// identical runs.
void write_trace_jsonl(const RunTrace& trace, std::ostream& out);
RunTrace read_trace_jsonl(std::istream& in);

void write_trace_file(const RunTrace& trace, const std::string& path);
RunTrace read_trace_file(const std::string& path);

nlohmann::json report_to_json(const MetricsReport& report);

}  // namespace bubblesim
