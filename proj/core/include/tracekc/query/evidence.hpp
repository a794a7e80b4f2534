#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tracekc/logic/var_set.hpp"
#include "tracekc/logic/variables.hpp"

namespace tracekc {

// Partial assignment; variables not mentioned are unknown.
class Evidence {
public:
    Evidence() = default;

    // Throws DataError if `var` is already assigned the opposite value.
    void set(VarId var, bool value);
    std::optional<bool> get(VarId var) const;
    bool empty() const { return values_.empty(); }
    std::size_t size() const { return values_.size(); }
    const std::map<VarId, bool>& values() const { return values_; }
    VarSet domain() const;

    // Binds names against `vars`. Selector variables are internal to the
    // encoding and rejected as unknown.
    static Evidence from_names(const std::vector<std::pair<std::string, bool>>& named, const VariableTable& vars);

    // Comma-separated "name=0|1" tokens. "action=<label>" conditions on an
    // action being taken. Throws UnknownVariable or DataError.
    static Evidence parse(std::string_view text, const VariableTable& vars);

    std::vector<std::pair<std::string, bool>> named(const VariableTable& vars) const;

private:
    std::map<VarId, bool> values_;
};

}  // namespace tracekc
