#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "tracekc/query/operations.hpp"

namespace tracekc {

struct Likelihood {
    std::string name;
    Rational value;
};

struct QueryResult {
    std::string target;  // "actions", "state" or "var:<name>"
    std::vector<std::pair<std::string, bool>> evidence;
    BigInt total_count;     // models of the theory
    BigInt evidence_count;  // models agreeing with the evidence
    std::vector<Likelihood> likelihoods;
};

// Decimal with `digits` significant digits, rounded half-up on the exact value.
std::string format_significant(const Rational& value, int digits = 4);
std::string to_fraction(const Rational& value);

// {"target", "evidence": {...}, "model_count", "evidence_count",
//  "likelihoods": [{"name", "decimal", "exact": "num/den", "display"}]}
nlohmann::ordered_json to_json(const QueryResult& result);
std::string render_table(const QueryResult& result);

}  // namespace tracekc
