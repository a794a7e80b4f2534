#pragma once

#include <map>
#include <string>

#include "tracekc/encode/trace_set.hpp"
#include "tracekc/rl/q_learning.hpp"
#include "tracekc/tlc/episode.hpp"

namespace tracekc::rl {

// Deterministic state -> phase map. States never visited in training fall
// back to the first phase (NS).
class GreedyPolicy {
public:
    GreedyPolicy() = default;
    static GreedyPolicy from_table(const QTable& table);

    Phase act(const StateBits& s) const;
    void set(const StateBits& s, Phase a) { actions_[s] = a; }
    const std::map<StateBits, Phase>& actions() const { return actions_; }
    std::size_t size() const { return actions_.size(); }

    tlc::Policy as_function() const;

    // {"<state bits>": "<phase>", ...}
    std::string to_json() const;
    static GreedyPolicy from_json(const std::string& text);  // throws DataError

private:
    std::map<StateBits, Phase> actions_;
};

}  // namespace tracekc::rl
