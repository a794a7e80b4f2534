#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "tracekc/query/theory.hpp"

namespace tracekc::service {

struct ServiceConfig {
    std::filesystem::path theory_dir;  // every *.nnf (with its .vars.json) becomes a theory named by file stem
    std::size_t node_cap = 2000;       // largest conditioned DAG /dag will render
};

struct TheoryHandle {
    std::string id;
    Theory theory;
};

struct ApiResponse {
    int status = 200;
    std::string body;  // JSON
};

// Read-only query service over immutable theories. Request handling is
// transport-independent; http_server.hpp binds it to HTTP.
//
//   GET  /theories                 -> [{id, schema, model_count, node_count, metadata}]
//   POST /theories/{id}/query      {evidence: {name: bool}, target: "actions"|"state"}
//   POST /theories/{id}/dag        {evidence: {name: bool}}
//   POST /admin/reload
//
// Errors: 400 malformed body, 404 unknown theory, 409 no supporting
// observations, 413 conditioned DAG above the node cap, 422 unknown variable.
class ApiService {
public:
    explicit ApiService(ServiceConfig config);

    // Reloads theory_dir (if set) and swaps the whole set at once. Throws
    // DataError if any theory fails to load or validate; the old set stays.
    void reload();
    void add_theory(std::string id, Theory theory);
    std::size_t theory_count() const;

    ApiResponse list_theories() const;
    ApiResponse query(std::string_view id, std::string_view body) const;
    ApiResponse dag(std::string_view id, std::string_view body) const;
    ApiResponse handle(std::string_view method, std::string_view path, std::string_view body);

    const ServiceConfig& config() const { return config_; }

private:
    using Snapshot = std::map<std::string, std::shared_ptr<const TheoryHandle>, std::less<>>;

    std::shared_ptr<const Snapshot> snapshot() const;
    std::shared_ptr<const TheoryHandle> find(std::string_view id) const;

    ServiceConfig config_;
    mutable std::mutex mutex_;
    std::shared_ptr<const Snapshot> theories_;
};

// Conditioned-DAG rendering: {"root", "node_count", "edge_count", "nodes": [...]}
// with nodes renumbered 0..n-1, children first.
std::string dag_to_json(const NnfDag& dag);

}  // namespace tracekc::service
