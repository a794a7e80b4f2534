#pragma once

#include <iosfwd>

#include "tracekc/logic/formula.hpp"

namespace tracekc {

// "p cnf <vars> <clauses>" header, "c" comment lines, 0-terminated clauses.
// Throws DataError on malformed input.
CnfFormula read_dimacs(std::istream& in);
void write_dimacs(const CnfFormula& cnf, std::ostream& out);

}  // namespace tracekc
