#include "tracekc/query/theory.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tracekc/compile/nnf_io.hpp"
#include "tracekc/encode/encoder.hpp"
#include "tracekc/error.hpp"
#include "tracekc/logic/validate.hpp"

namespace tracekc {

Theory::Theory(NnfDag dag, Metadata metadata) : dag_(std::move(dag)), metadata_(std::move(metadata)) {
    const auto& vars = dag_.variables();
    state_vars_ = vars.with_role(VarRole::State);
    action_vars_ = vars.with_role(VarRole::Action);
    const std::string prefix = kActionPrefix;
    for (VarId v : action_vars_) {
        const std::string& name = vars[v].name;
        action_labels_.push_back(name.rfind(prefix, 0) == 0 ? name.substr(prefix.size()) : name);
    }
    model_count_ = tracekc::model_count(dag_);
}

QueryResult Theory::likelihoods(std::string target, const std::vector<VarId>& targets,
                                const Evidence& evidence) const {
    QueryResult r;
    r.target = std::move(target);
    r.evidence = evidence.named(variables());
    r.total_count = model_count_;
    r.evidence_count = count_consistent(dag_, evidence);
    if (r.evidence_count.is_zero()) throw NoSupport();
    for (VarId v : targets) {
        Rational p;
        if (auto known = evidence.get(v)) {
            p = *known ? 1 : 0;
        } else {
            Evidence with = evidence;
            with.set(v, true);
            p = Rational(count_consistent(dag_, with), r.evidence_count);
        }
        r.likelihoods.push_back(Likelihood{variables()[v].name, std::move(p)});
    }
    return r;
}

QueryResult Theory::action_likelihood(const Evidence& evidence) const {
    if (action_vars_.empty()) throw DataError("theory has no action variables");
    QueryResult r = likelihoods("actions", action_vars_, evidence);
    for (std::size_t i = 0; i < r.likelihoods.size(); ++i) r.likelihoods[i].name = action_labels_[i];
    return r;
}

QueryResult Theory::state_likelihood(const Evidence& evidence) const {
    const auto& targets = state_vars_.empty() ? variables().with_role(VarRole::Plain) : state_vars_;
    return likelihoods("state", targets, evidence);
}

QueryResult Theory::state_likelihood(const std::string& action_label) const {
    Evidence e;
    for (std::size_t i = 0; i < action_labels_.size(); ++i) {
        if (action_labels_[i] == action_label) {
            e.set(action_vars_[i], true);
            return state_likelihood(e);
        }
    }
    throw DataError("unknown action: " + action_label);
}

QueryResult Theory::variable_likelihood(const std::string& name, const Evidence& evidence) const {
    auto id = variables().find(name);
    if (!id || variables()[*id].role == VarRole::Selector) throw UnknownVariable(name);
    return likelihoods("var:" + name, {*id}, evidence);
}

std::filesystem::path vars_path_for(const std::filesystem::path& nnf_path) {
    auto p = nnf_path;
    p.replace_extension(".vars.json");
    return p;
}

void save_theory(const std::filesystem::path& path, const NnfDag& dag, const Metadata& metadata) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << export_nnf(dag);

    nlohmann::ordered_json j;
    nlohmann::ordered_json vars = nlohmann::ordered_json::array();
    for (const auto& v : dag.variables().all()) vars.push_back({{"name", v.name}, {"role", to_string(v.role)}});
    j["variables"] = std::move(vars);
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : metadata) meta[k] = v;
    j["metadata"] = std::move(meta);
    std::ofstream side(vars_path_for(path), std::ios::binary);
    if (!side) throw DataError("cannot write " + vars_path_for(path).string());
    side << j.dump(2) << '\n';
}

Theory load_theory(const std::filesystem::path& path, bool require_valid) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path.string());
    std::stringstream text;
    text << in.rdbuf();

    NnfImportOptions opts;
    opts.require_decomposable = require_valid;
    Metadata metadata;
    if (std::ifstream side(vars_path_for(path), std::ios::binary); side) {
        try {
            auto j = nlohmann::json::parse(side);
            auto table = std::make_shared<VariableTable>();
            for (const auto& v : j.at("variables"))
                table->add(v.at("name").get<std::string>(), parse_var_role(v.at("role").get<std::string>()));
            opts.vars = std::move(table);
            if (j.contains("metadata"))
                for (const auto& [k, v] : j["metadata"].items())
                    metadata[k] = v.is_string() ? v.get<std::string>() : v.dump();
        } catch (const nlohmann::json::exception& e) {
            throw DataError(vars_path_for(path).string() + ": " + e.what());
        }
    }
    NnfDag dag = import_nnf(text.str(), opts);
    if (require_valid) {
        if (auto v = check_determinism(dag)) throw DataError(path.string() + ": not deterministic: " + v->message);
    }
    return Theory(std::move(dag), std::move(metadata));
}

}  // namespace tracekc
