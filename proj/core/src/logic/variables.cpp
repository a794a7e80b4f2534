#include "tracekc/logic/variables.hpp"

#include "tracekc/error.hpp"

namespace tracekc {

std::string_view to_string(VarRole role) {
    switch (role) {
        case VarRole::Plain: return "plain";
        case VarRole::State: return "state";
        case VarRole::Action: return "action";
        case VarRole::Selector: return "selector";
    }
    return "plain";
}

VarRole parse_var_role(std::string_view text) {
    if (text == "plain") return VarRole::Plain;
    if (text == "state") return VarRole::State;
    if (text == "action") return VarRole::Action;
    if (text == "selector") return VarRole::Selector;
    throw DataError("unknown variable role: " + std::string(text));
}

VarId VariableTable::add(std::string name, VarRole role) {
    auto id = static_cast<VarId>(vars_.size());
    auto [it, inserted] = by_name_.emplace(name, id);
    if (!inserted) throw DataError("duplicate variable name: " + name);
    vars_.push_back(Variable{id, std::move(name), role});
    return id;
}

VariableTable VariableTable::numbered(std::size_t n) {
    VariableTable t;
    for (std::size_t i = 0; i < n; ++i) t.add("x" + std::to_string(i + 1));
    return t;
}

std::optional<VarId> VariableTable::find(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

VarId VariableTable::id_of(std::string_view name) const {
    if (auto id = find(name)) return *id;
    throw UnknownVariable(std::string(name));
}

std::vector<VarId> VariableTable::with_role(VarRole role) const {
    std::vector<VarId> out;
    for (const auto& v : vars_)
        if (v.role == role) out.push_back(v.id);
    return out;
}

}  // namespace tracekc
