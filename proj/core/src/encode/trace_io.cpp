#include "tracekc/encode/trace_io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "tracekc/error.hpp"

namespace tracekc {

using ojson = nlohmann::ordered_json;

void write_jsonl(const TraceSet& traces, std::ostream& out) {
    const auto& names = traces.schema().state_variables;
    for (const auto& obs : traces.observations()) {
        ojson state = ojson::object();
        for (std::size_t i = 0; i < names.size(); ++i) state[names[i]] = obs.state[i] ? 1 : 0;
        ojson line;
        line["state"] = std::move(state);
        line["action"] = obs.action;
        out << line.dump() << '\n';
    }
}

TraceSet read_jsonl(std::istream& in, const Schema& schema) {
    TraceSet traces(schema);
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < schema.state_variables.size(); ++i) index[schema.state_variables[i]] = i;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto where = [&] { return "traces line " + std::to_string(line_no) + ": "; };
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw DataError(where() + e.what());
        }
        if (!j.is_object() || !j.contains("state") || !j.contains("action") || !j["state"].is_object() ||
            !j["action"].is_string())
            throw DataError(where() + "expected {\"state\": {...}, \"action\": \"...\"}");
        Observation obs;
        obs.state.assign(schema.state_variables.size(), false);
        std::vector<bool> present(schema.state_variables.size(), false);
        for (const auto& [name, value] : j["state"].items()) {
            auto it = index.find(name);
            if (it == index.end()) throw DataError(where() + "state variable not in schema: " + name);
            if (!value.is_number_integer() || (value.get<int>() != 0 && value.get<int>() != 1))
                throw DataError(where() + "state value for " + name + " must be 0 or 1");
            obs.state[it->second] = value.get<int>() == 1;
            present[it->second] = true;
        }
        for (std::size_t i = 0; i < present.size(); ++i)
            if (!present[i]) throw DataError(where() + "missing state variable " + schema.state_variables[i]);
        obs.action = j["action"].get<std::string>();
        try {
            traces.add(std::move(obs));
        } catch (const DataError& e) {
            throw DataError(where() + e.what());
        }
    }
    return traces;
}

std::string schema_to_json(const TraceSet& traces) {
    ojson j;
    j["state_variables"] = traces.schema().state_variables;
    j["actions"] = traces.schema().actions;
    ojson prov = ojson::object();
    for (const auto& [k, v] : traces.provenance()) prov[k] = v;
    j["provenance"] = std::move(prov);
    return j.dump(2) + "\n";
}

TraceSet trace_set_from_schema_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(std::string("schema: ") + e.what());
    }
    Schema schema;
    try {
        schema.state_variables = j.at("state_variables").get<std::vector<std::string>>();
        schema.actions = j.at("actions").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("schema: ") + e.what());
    }
    TraceSet traces(std::move(schema));
    if (j.contains("provenance") && j["provenance"].is_object()) {
        for (const auto& [k, v] : j["provenance"].items())
            traces.provenance()[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
    return traces;
}

std::filesystem::path schema_path_for(const std::filesystem::path& traces_path) {
    auto p = traces_path;
    p.replace_extension(".schema.json");
    return p;
}

void save_traces(const TraceSet& traces, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    write_jsonl(traces, out);
    std::ofstream side(schema_path_for(path), std::ios::binary);
    if (!side) throw DataError("cannot write " + schema_path_for(path).string());
    side << schema_to_json(traces);
}

TraceSet load_traces(const std::filesystem::path& path) {
    std::ifstream side(schema_path_for(path), std::ios::binary);
    if (!side) throw DataError("missing schema sidecar " + schema_path_for(path).string());
    std::stringstream buf;
    buf << side.rdbuf();
    TraceSet meta = trace_set_from_schema_json(buf.str());

    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path.string());
    TraceSet traces = read_jsonl(in, meta.schema());
    traces.provenance() = meta.provenance();
    return traces;
}

}  // namespace tracekc
