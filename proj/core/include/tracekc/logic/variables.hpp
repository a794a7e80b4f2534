#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tracekc/logic/literal.hpp"

namespace tracekc {

enum class VarRole { Plain, State, Action, Selector };

std::string_view to_string(VarRole role);
VarRole parse_var_role(std::string_view text);

struct Variable {
    VarId id = 0;
    std::string name;
    VarRole role = VarRole::Plain;
};

// Contiguous ids 0..n-1 with unique names.
class VariableTable {
public:
    VariableTable() = default;

    // Throws DataError on a duplicate name.
    VarId add(std::string name, VarRole role = VarRole::Plain);

    // Table of n plain variables named x1..xn.
    static VariableTable numbered(std::size_t n);

    std::size_t size() const { return vars_.size(); }
    const Variable& operator[](VarId id) const { return vars_.at(id); }
    const std::vector<Variable>& all() const { return vars_; }

    std::optional<VarId> find(std::string_view name) const;
    // Throws UnknownVariable.
    VarId id_of(std::string_view name) const;

    std::vector<VarId> with_role(VarRole role) const;

private:
    std::vector<Variable> vars_;
    std::unordered_map<std::string, VarId> by_name_;
};

using VariableTablePtr = std::shared_ptr<const VariableTable>;

}  // namespace tracekc
