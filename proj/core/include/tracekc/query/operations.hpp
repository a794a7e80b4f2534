#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "tracekc/logic/nnf.hpp"
#include "tracekc/query/evidence.hpp"

namespace tracekc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Replaces assigned literals by constants and simplifies in one bottom-up
// pass. The result is over the same schema and stays d-DNNF. Empty evidence
// returns the input unchanged. Throws UnknownVariable for ids outside the schema.
NnfDag condition(const NnfDag& dag, const Evidence& evidence);

// Pads every Or child with (v | ~v) for the variables it misses relative to
// its siblings, and the root for those it misses from `over`.
NnfDag smooth(const NnfDag& dag, const VarSet& over);

// Number of satisfying assignments over `over`, with smoothing applied on the
// fly. Requires a decomposable, deterministic DAG.
// Throws std::invalid_argument if the root mentions a variable outside `over`.
BigInt model_count(const NnfDag& dag, const VarSet& over);
inline BigInt model_count(const NnfDag& dag) { return model_count(dag, dag.all_vars()); }

// Models over the full schema that agree with `evidence`; equals
// model_count(condition(dag, e), all \ dom(e)) without building the
// conditioned DAG.
BigInt count_consistent(const NnfDag& dag, const Evidence& evidence);

// count(dag | evidence + target) / count(dag | evidence).
// Throws NoSupport when the evidence has no models.
Rational probability(const NnfDag& dag, Literal target, const Evidence& evidence);

}  // namespace tracekc
