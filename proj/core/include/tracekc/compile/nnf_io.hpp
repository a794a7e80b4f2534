#pragma once

#include <string>
#include <string_view>

#include "tracekc/logic/nnf.hpp"

namespace tracekc {

// c2d NNF text: "nnf V E N", then one line per node with children first and
// the root last:
//   L <signed 1-based literal>
//   A <c> <i1> ... <ic>           (A 0 is true)
//   O <j> <c> <i1> ... <ic>       (j = decision variable, 0 if none; O 0 0 is false)
std::string export_nnf(const NnfDag& dag);

struct NnfImportOptions {
    bool require_decomposable = true;
    VariableTablePtr vars;  // defaults to x1..xN from the header
};

// Throws DataError on a malformed header, a dangling or forward child index,
// or (by default) a non-decomposable circuit.
NnfDag import_nnf(std::string_view text, const NnfImportOptions& options = {});

}  // namespace tracekc
