#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "tracekc/encode/trace_set.hpp"

namespace tracekc {

// JSON Lines, one observation per line:
//   {"state": {"<var>": 0|1, ...}, "action": "<label>"}
// State keys are written in schema order.
void write_jsonl(const TraceSet& traces, std::ostream& out);
TraceSet read_jsonl(std::istream& in, const Schema& schema);

// Sidecar: {"state_variables": [...], "actions": [...], "provenance": {...}}
std::string schema_to_json(const TraceSet& traces);
// Reads schema and provenance into an empty trace set.
TraceSet trace_set_from_schema_json(const std::string& text);

// traces.jsonl -> traces.schema.json
std::filesystem::path schema_path_for(const std::filesystem::path& traces_path);

void save_traces(const TraceSet& traces, const std::filesystem::path& path);
TraceSet load_traces(const std::filesystem::path& path);

}  // namespace tracekc
