#include "tracekc/query/evidence.hpp"

#include "tracekc/encode/encoder.hpp"
#include "tracekc/error.hpp"

namespace tracekc {

void Evidence::set(VarId var, bool value) {
    auto [it, inserted] = values_.emplace(var, value);
    if (!inserted && it->second != value) throw DataError("variable assigned twice with different values");
}

std::optional<bool> Evidence::get(VarId var) const {
    auto it = values_.find(var);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

VarSet Evidence::domain() const {
    VarSet s;
    for (const auto& [v, _] : values_) s.insert(v);
    return s;
}

namespace {

VarId visible_id(std::string_view name, const VariableTable& vars) {
    auto id = vars.find(name);
    if (!id || vars[*id].role == VarRole::Selector) throw UnknownVariable(std::string(name));
    return *id;
}

std::string_view trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

}  // namespace

Evidence Evidence::from_names(const std::vector<std::pair<std::string, bool>>& named, const VariableTable& vars) {
    Evidence e;
    for (const auto& [name, value] : named) e.set(visible_id(name, vars), value);
    return e;
}

Evidence Evidence::parse(std::string_view text, const VariableTable& vars) {
    Evidence e;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        std::string_view token = trim(text.substr(pos, comma - pos));
        pos = comma + 1;
        if (token.empty()) continue;

        std::size_t eq = token.rfind('=');
        if (eq == std::string_view::npos) throw DataError("evidence token needs name=0|1: " + std::string(token));
        std::string_view name = trim(token.substr(0, eq));
        std::string_view value = trim(token.substr(eq + 1));
        if ((value == "0" || value == "1") && vars.find(name)) {
            e.set(visible_id(name, vars), value == "1");
        } else if (name == "action") {
            e.set(visible_id(std::string(kActionPrefix) + std::string(value), vars), true);
        } else if (value == "0" || value == "1") {
            throw UnknownVariable(std::string(name));
        } else {
            throw DataError("evidence value must be 0 or 1: " + std::string(token));
        }
    }
    return e;
}

std::vector<std::pair<std::string, bool>> Evidence::named(const VariableTable& vars) const {
    std::vector<std::pair<std::string, bool>> out;
    for (const auto& [v, value] : values_) out.emplace_back(vars[v].name, value);
    return out;
}

}  // namespace tracekc
