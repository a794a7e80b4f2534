#include "tracekc/service/api_service.hpp"

#include <algorithm>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "tracekc/error.hpp"
#include "tracekc/query/operations.hpp"

namespace tracekc::service {

using ojson = nlohmann::ordered_json;

namespace {

ApiResponse error(int status, const std::string& message) {
    ojson j;
    j["error"] = message;
    j["status"] = status;
    return ApiResponse{status, j.dump()};
}

ApiResponse ok(const ojson& j) { return ApiResponse{200, j.dump()}; }

struct ParsedBody {
    std::vector<std::pair<std::string, bool>> evidence;
    std::string target = "actions";
};

// Throws DataError on malformed input.
ParsedBody parse_body(std::string_view body) {
    ParsedBody out;
    if (body.find_first_not_of(" \t\r\n") == std::string_view::npos) return out;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(std::string("request body is not JSON: ") + e.what());
    }
    if (!j.is_object()) throw DataError("request body must be a JSON object");
    if (j.contains("evidence")) {
        const auto& ev = j["evidence"];
        if (!ev.is_object()) throw DataError("evidence must be an object of name: true|false");
        for (const auto& [name, value] : ev.items()) {
            if (!value.is_boolean()) throw DataError("evidence value for " + name + " must be true or false");
            out.evidence.emplace_back(name, value.get<bool>());
        }
    }
    if (j.contains("target")) {
        if (!j["target"].is_string()) throw DataError("target must be a string");
        out.target = j["target"].get<std::string>();
        if (out.target != "actions" && out.target != "state")
            throw DataError("target must be \"actions\" or \"state\"");
    }
    return out;
}

std::string_view kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::False: return "false";
        case NodeKind::True: return "true";
        case NodeKind::Lit: return "lit";
        case NodeKind::And: return "and";
        case NodeKind::Or: return "or";
    }
    return "false";
}

}  // namespace

std::string dag_to_json(const NnfDag& dag) {
    const auto& order = dag.reachable();
    std::unordered_map<NodeId, std::size_t> index;
    for (std::size_t i = 0; i < order.size(); ++i) index.emplace(order[i], i);
    ojson nodes = ojson::array();
    for (std::size_t i = 0; i < order.size(); ++i) {
        const NnfNode& n = dag.node(order[i]);
        ojson node;
        node["id"] = i;
        node["kind"] = kind_name(n.kind);
        if (n.kind == NodeKind::Lit) {
            node["literal"] = {{"var", dag.variables()[n.literal.var()].name}, {"positive", n.literal.positive()}};
        } else if (n.kind == NodeKind::And || n.kind == NodeKind::Or) {
            ojson kids = ojson::array();
            for (NodeId c : n.children) kids.push_back(index.at(c));
            node["children"] = std::move(kids);
            if (n.kind == NodeKind::Or && n.decision != kNoVar)
                node["decision"] = dag.variables()[n.decision].name;
        }
        nodes.push_back(std::move(node));
    }
    ojson j;
    j["root"] = order.size() - 1;
    j["node_count"] = order.size();
    j["edge_count"] = dag.edge_count();
    j["nodes"] = std::move(nodes);
    return j.dump();
}

ApiService::ApiService(ServiceConfig config)
    : config_(std::move(config)), theories_(std::make_shared<const Snapshot>()) {
    if (!config_.theory_dir.empty()) reload();
}

std::shared_ptr<const ApiService::Snapshot> ApiService::snapshot() const {
    std::lock_guard lock(mutex_);
    return theories_;
}

std::shared_ptr<const TheoryHandle> ApiService::find(std::string_view id) const {
    auto snap = snapshot();
    auto it = snap->find(id);
    return it == snap->end() ? nullptr : it->second;
}

std::size_t ApiService::theory_count() const { return snapshot()->size(); }

void ApiService::reload() {
    auto next = std::make_shared<Snapshot>();
    if (!config_.theory_dir.empty()) {
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(config_.theory_dir))
            if (entry.is_regular_file() && entry.path().extension() == ".nnf") files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            std::string id = f.stem().string();
            next->emplace(id, std::make_shared<const TheoryHandle>(TheoryHandle{id, load_theory(f, true)}));
        }
    }
    std::lock_guard lock(mutex_);
    theories_ = std::move(next);
}

void ApiService::add_theory(std::string id, Theory theory) {
    std::lock_guard lock(mutex_);
    auto next = std::make_shared<Snapshot>(*theories_);
    (*next)[id] = std::make_shared<const TheoryHandle>(TheoryHandle{id, std::move(theory)});
    theories_ = std::move(next);
}

ApiResponse ApiService::list_theories() const {
    ojson out = ojson::array();
    for (const auto& [id, handle] : *snapshot()) {
        const Theory& t = handle->theory;
        ojson schema;
        ojson state = ojson::array();
        for (VarId v : t.state_vars()) state.push_back(t.variables()[v].name);
        schema["state_variables"] = std::move(state);
        schema["actions"] = t.action_labels();
        ojson meta = ojson::object();
        for (const auto& [k, v] : t.metadata()) meta[k] = v;
        ojson item;
        item["id"] = id;
        item["schema"] = std::move(schema);
        item["model_count"] = t.model_count().str();
        item["node_count"] = t.dag().node_count();
        item["metadata"] = std::move(meta);
        out.push_back(std::move(item));
    }
    return ok(out);
}

ApiResponse ApiService::query(std::string_view id, std::string_view body) const {
    auto handle = find(id);
    if (!handle) return error(404, "unknown theory: " + std::string(id));
    try {
        ParsedBody req = parse_body(body);
        const Theory& t = handle->theory;
        Evidence e = t.bind_evidence(req.evidence);
        QueryResult r = req.target == "state" ? t.state_likelihood(e) : t.action_likelihood(e);
        ojson j;
        j["theory"] = handle->id;
        j.update(to_json(r));
        return ok(j);
    } catch (const UnknownVariable& e) {
        return error(422, e.what());
    } catch (const NoSupport& e) {
        return error(409, e.what());
    } catch (const DataError& e) {
        return error(400, e.what());
    }
}

ApiResponse ApiService::dag(std::string_view id, std::string_view body) const {
    auto handle = find(id);
    if (!handle) return error(404, "unknown theory: " + std::string(id));
    try {
        ParsedBody req = parse_body(body);
        const Theory& t = handle->theory;
        NnfDag conditioned = condition(t.dag(), t.bind_evidence(req.evidence));
        if (conditioned.node_count() > config_.node_cap)
            return error(413, "conditioned DAG has " + std::to_string(conditioned.node_count()) +
                                  " nodes, above the render cap of " + std::to_string(config_.node_cap));
        return ApiResponse{200, dag_to_json(conditioned)};
    } catch (const UnknownVariable& e) {
        return error(422, e.what());
    } catch (const DataError& e) {
        return error(400, e.what());
    }
}

ApiResponse ApiService::handle(std::string_view method, std::string_view path, std::string_view body) {
    if (method == "GET" && (path == "/theories" || path == "/theories/")) return list_theories();
    if (method == "POST" && path == "/admin/reload") {
        try {
            reload();
        } catch (const std::exception& e) {
            return error(400, e.what());
        }
        return ok(ojson{{"theories", theory_count()}});
    }
    constexpr std::string_view prefix = "/theories/";
    if (path.substr(0, prefix.size()) == prefix) {
        std::string_view rest = path.substr(prefix.size());
        std::size_t slash = rest.find('/');
        if (slash != std::string_view::npos) {
            std::string_view id = rest.substr(0, slash);
            std::string_view action = rest.substr(slash + 1);
            if (method != "POST") return error(405, "method not allowed");
            if (action == "query") return query(id, body);
            if (action == "dag") return dag(id, body);
        }
    }
    return error(404, "no route for " + std::string(method) + " " + std::string(path));
}

}  // namespace tracekc::service
