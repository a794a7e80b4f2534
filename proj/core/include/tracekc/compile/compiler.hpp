#pragma once

#include <cstddef>
#include <span>

#include "tracekc/logic/formula.hpp"
#include "tracekc/logic/nnf.hpp"

namespace tracekc {

struct CompileOptions {
    bool component_cache = true;
};

struct CompileStats {
    std::size_t node_count = 0;  // reachable from the root
    std::size_t edge_count = 0;
    std::size_t cache_hits = 0;
    std::size_t decisions = 0;
    std::size_t propagations = 0;
    double wall_seconds = 0.0;
};

struct CompileResult {
    NnfDag dag;
    CompileStats stats;
};

// Exhaustive DPLL to d-DNNF: unit propagation, connected-component
// decomposition joined by And, decision Or nodes on the max-occurrence
// variable, and a cache keyed by the canonical residual clause set.
// Unsatisfiable input yields the False leaf. `vars` defaults to x1..xn.
CompileResult compile(const CnfFormula& cnf, VariableTablePtr vars = nullptr, CompileOptions options = {});

// Variable with the most occurrences across `clauses`; ties go to the lowest id.
// Requires at least one literal.
VarId choose_decision_variable(std::span<const Clause> clauses);

}  // namespace tracekc
