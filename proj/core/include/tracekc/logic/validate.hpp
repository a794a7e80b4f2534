#pragma once

#include <optional>
#include <string>

#include "tracekc/logic/nnf.hpp"

namespace tracekc {

struct Violation {
    NodeId node = 0;
    VarId var = kNoVar;  // offending variable, when there is one
    std::string message;
};

// Empty optional means the property holds. Nodes are visited in topological
// order, so the reported violation is the lowest offending node id.
using CheckResult = std::optional<Violation>;

// Children of every And mention pairwise disjoint variables.
CheckResult check_decomposability(const NnfDag& dag);

// Structural: every Or is a decision node, i.e. has two children where one
// has literal x as a direct conjunct and the other has ~x. Semantic
// pairwise-contradiction checking is not attempted.
CheckResult check_determinism(const NnfDag& dag);

// Every Or's children mention identical variable sets; if `over` is given the
// root must also mention all of `over` (vacuous for the False leaf).
CheckResult check_smoothness(const NnfDag& dag, const VarSet* over = nullptr);

}  // namespace tracekc
