#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tracekc/logic/nnf.hpp"
#include "tracekc/query/evidence.hpp"
#include "tracekc/query/operations.hpp"
#include "tracekc/query/result.hpp"

namespace tracekc {

using Metadata = std::map<std::string, std::string>;

// A compiled policy theory: the DAG plus the roles of its variables.
// Immutable; all queries are read-only.
class Theory {
public:
    explicit Theory(NnfDag dag, Metadata metadata = {});

    const NnfDag& dag() const { return dag_; }
    const VariableTable& variables() const { return dag_.variables(); }
    const Metadata& metadata() const { return metadata_; }

    const std::vector<VarId>& state_vars() const { return state_vars_; }
    const std::vector<VarId>& action_vars() const { return action_vars_; }
    const std::vector<std::string>& action_labels() const { return action_labels_; }

    const BigInt& model_count() const { return model_count_; }

    Evidence parse_evidence(std::string_view text) const { return Evidence::parse(text, variables()); }
    Evidence bind_evidence(const std::vector<std::pair<std::string, bool>>& named) const {
        return Evidence::from_names(named, variables());
    }

    // P(a | evidence) for each action. Throws NoSupport on zero-count evidence,
    // DataError if the theory has no action variables.
    QueryResult action_likelihood(const Evidence& evidence) const;
    // P(x = true | evidence) for each state variable.
    QueryResult state_likelihood(const Evidence& evidence) const;
    // Conditioned on one action; throws DataError for an unknown label and
    // NoSupport if the action was never observed.
    QueryResult state_likelihood(const std::string& action_label) const;
    QueryResult variable_likelihood(const std::string& name, const Evidence& evidence) const;

private:
    QueryResult likelihoods(std::string target, const std::vector<VarId>& targets, const Evidence& evidence) const;

    NnfDag dag_;
    Metadata metadata_;
    std::vector<VarId> state_vars_;
    std::vector<VarId> action_vars_;
    std::vector<std::string> action_labels_;
    BigInt model_count_;
};

// theory.nnf -> theory.vars.json
std::filesystem::path vars_path_for(const std::filesystem::path& nnf_path);

// Writes the c2d file and a sidecar with variable names, roles and metadata.
void save_theory(const std::filesystem::path& path, const NnfDag& dag, const Metadata& metadata = {});

// Reads both files. Without a sidecar, variables are x1..xN. When
// `require_valid` is set, throws DataError unless the DAG is decomposable and
// deterministic.
Theory load_theory(const std::filesystem::path& path, bool require_valid = true);

}  // namespace tracekc
