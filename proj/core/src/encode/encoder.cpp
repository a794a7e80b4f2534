#include "tracekc/encode/encoder.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <unordered_set>

#include "tracekc/error.hpp"

namespace tracekc {

VariableTable theory_variables(const Schema& schema) {
    schema.validate();
    VariableTable vars;
    for (const auto& name : schema.state_variables) vars.add(name, VarRole::State);
    for (const auto& label : schema.actions) vars.add(kActionPrefix + label, VarRole::Action);
    return vars;
}

DnfFormula encode_dnf(const TraceSet& traces) {
    if (traces.empty()) throw DataError("cannot encode an empty trace set");
    const Schema& schema = traces.schema();
    auto vars = std::make_shared<const VariableTable>(theory_variables(schema));
    const auto num_state = static_cast<VarId>(schema.state_variables.size());

    DnfFormula dnf;
    dnf.vars = vars;
    std::set<std::pair<StateBits, std::string>> seen;
    for (const auto& obs : traces.observations()) {
        if (!seen.emplace(obs.state, obs.action).second) continue;
        Term term;
        term.reserve(num_state + schema.actions.size());
        for (VarId v = 0; v < num_state; ++v) term.emplace_back(v, obs.state[v]);
        std::size_t chosen = schema.action_index(obs.action);
        for (std::size_t a = 0; a < schema.actions.size(); ++a)
            term.emplace_back(num_state + static_cast<VarId>(a), a == chosen);
        dnf.terms.push_back(std::move(term));
    }
    return dnf;
}

std::vector<PolicyConflict> detect_policy_conflicts(const TraceSet& traces) {
    const Schema& schema = traces.schema();
    std::map<StateBits, std::set<std::size_t>> actions_by_state;
    std::vector<StateBits> order;
    for (const auto& obs : traces.observations()) {
        auto [it, inserted] = actions_by_state.try_emplace(obs.state);
        if (inserted) order.push_back(obs.state);
        it->second.insert(schema.action_index(obs.action));
    }
    std::vector<PolicyConflict> out;
    for (const auto& state : order) {
        const auto& acts = actions_by_state[state];
        if (acts.size() < 2) continue;
        PolicyConflict c{state, {}};
        for (std::size_t a : acts) c.actions.push_back(schema.actions[a]);
        out.push_back(std::move(c));
    }
    return out;
}

SelectorEncoding dnf_to_cnf(const DnfFormula& dnf) {
    if (dnf.terms.empty()) throw DataError("cannot encode an empty DNF");
    auto vars = std::make_shared<VariableTable>(dnf.vars ? *dnf.vars : VariableTable{});
    if (!dnf.vars) {
        VarId max_var = 0;
        for (const auto& t : dnf.terms)
            for (Literal l : t) max_var = std::max(max_var, l.var() + 1);
        *vars = VariableTable::numbered(max_var);
    }

    SelectorEncoding enc;
    enc.selectors.reserve(dnf.terms.size());
    for (std::size_t i = 0; i < dnf.terms.size(); ++i)
        enc.selectors.push_back(vars->add("~sel" + std::to_string(i), VarRole::Selector));

    auto& clauses = enc.cnf.clauses;
    Clause cover;
    for (std::size_t i = 0; i < dnf.terms.size(); ++i) {
        Literal sel(enc.selectors[i], true);
        Clause back{sel};
        for (Literal l : dnf.terms[i]) {
            clauses.push_back({~sel, l});
            back.push_back(~l);
        }
        clauses.push_back(std::move(back));
        cover.push_back(sel);
    }
    clauses.push_back(std::move(cover));
    enc.cnf.num_vars = vars->size();
    enc.vars = std::move(vars);
    return enc;
}

}  // namespace tracekc
