#include "tracekc/encode/trace_set.hpp"

#include <algorithm>
#include <set>

#include "tracekc/error.hpp"

namespace tracekc {

std::string to_bit_string(const StateBits& bits) {
    std::string s(bits.size(), '0');
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) s[i] = '1';
    return s;
}

StateBits from_bit_string(const std::string& text) {
    StateBits bits(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '0' && text[i] != '1') throw DataError("invalid state bit string: " + text);
        bits[i] = text[i] == '1';
    }
    return bits;
}

void Schema::validate() const {
    if (state_variables.empty()) throw DataError("schema needs at least one state variable");
    if (actions.size() < 2) throw DataError("schema needs at least two actions");
    std::set<std::string> names;
    for (const auto& n : state_variables)
        if (!names.insert(n).second) throw DataError("duplicate state variable: " + n);
    std::set<std::string> labels;
    for (const auto& a : actions)
        if (!labels.insert(a).second) throw DataError("duplicate action: " + a);
}

std::size_t Schema::action_index(const std::string& label) const {
    auto it = std::find(actions.begin(), actions.end(), label);
    if (it == actions.end()) throw DataError("action not in schema: " + label);
    return static_cast<std::size_t>(it - actions.begin());
}

TraceSet::TraceSet(Schema schema) : schema_(std::move(schema)) { schema_.validate(); }

void TraceSet::add(Observation obs) {
    if (obs.state.size() != schema_.state_variables.size())
        throw DataError("observation has " + std::to_string(obs.state.size()) + " state bits, schema has " +
                        std::to_string(schema_.state_variables.size()));
    schema_.action_index(obs.action);
    observations_.push_back(std::move(obs));
}

void TraceSet::append(const TraceSet& other) {
    if (!(other.schema_ == schema_)) throw DataError("cannot append traces with a different schema");
    observations_.insert(observations_.end(), other.observations_.begin(), other.observations_.end());
}

}  // namespace tracekc
