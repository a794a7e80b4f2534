#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace tracekc {

using StateBits = std::vector<bool>;

std::string to_bit_string(const StateBits& bits);
StateBits from_bit_string(const std::string& text);

struct Schema {
    std::vector<std::string> state_variables;
    std::vector<std::string> actions;

    // Throws DataError unless there is at least one state variable, at least
    // two actions, and all names are unique.
    void validate() const;
    std::size_t action_index(const std::string& label) const;  // throws DataError
    bool operator==(const Schema&) const = default;
};

struct Observation {
    StateBits state;
    std::string action;
    bool operator==(const Observation&) const = default;
};

class TraceSet {
public:
    TraceSet() = default;
    explicit TraceSet(Schema schema);

    const Schema& schema() const { return schema_; }
    const std::vector<Observation>& observations() const { return observations_; }
    std::size_t size() const { return observations_.size(); }
    bool empty() const { return observations_.empty(); }

    // Throws DataError if the observation does not conform to the schema.
    void add(Observation obs);
    void append(const TraceSet& other);

    std::map<std::string, std::string>& provenance() { return provenance_; }
    const std::map<std::string, std::string>& provenance() const { return provenance_; }

private:
    Schema schema_;
    std::vector<Observation> observations_;
    std::map<std::string, std::string> provenance_;
};

}  // namespace tracekc
