#pragma once

#include <cstddef>
#include <vector>

#include "tracekc/logic/literal.hpp"
#include "tracekc/logic/variables.hpp"

namespace tracekc {

using Clause = std::vector<Literal>;  // disjunction
using Term = std::vector<Literal>;    // conjunction

// Conjunction of clauses. Zero clauses is the valid theory; an empty clause
// makes the formula unsatisfiable.
struct CnfFormula {
    std::size_t num_vars = 0;
    std::vector<Clause> clauses;
};

// Disjunction of terms, flat (depth 2 as NNF).
struct DnfFormula {
    VariableTablePtr vars;
    std::vector<Term> terms;
};

}  // namespace tracekc
