#pragma once

#include <string>
#include <vector>

#include "tracekc/encode/trace_set.hpp"
#include "tracekc/logic/formula.hpp"
#include "tracekc/logic/variables.hpp"

namespace tracekc {

inline constexpr const char* kActionPrefix = "action=";

// State variables first (ids 0..S-1), then one indicator per action named
// "action=<label>" (ids S..S+A-1).
VariableTable theory_variables(const Schema& schema);

// One conjunctive term per distinct observation, in first-seen order. Every
// state variable appears with its observed polarity; the observed action's
// indicator is positive and all other indicators negative.
// Throws DataError on an empty trace set.
DnfFormula encode_dnf(const TraceSet& traces);

struct PolicyConflict {
    StateBits state;
    std::vector<std::string> actions;  // schema order
};

// States observed with two or more distinct actions.
std::vector<PolicyConflict> detect_policy_conflicts(const TraceSet& traces);

struct SelectorEncoding {
    CnfFormula cnf;
    VariableTablePtr vars;         // original variables followed by selectors
    std::vector<VarId> selectors;  // selectors[i] is tied to dnf.terms[i]
};

// Biconditional selector encoding: sel_i <-> C_i for every term, plus the
// cover clause (sel_1 | ... | sel_m). Each original assignment extends to
// exactly one selector assignment, so model counts are preserved.
// Throws DataError on an empty DNF.
SelectorEncoding dnf_to_cnf(const DnfFormula& dnf);

}  // namespace tracekc
