#include "tracekc/rl/policy.hpp"

#include <nlohmann/json.hpp>

#include "tracekc/error.hpp"

namespace tracekc::rl {

GreedyPolicy GreedyPolicy::from_table(const QTable& table) {
    GreedyPolicy p;
    for (const auto& [state, _] : table.entries()) p.actions_[state] = table.greedy(state);
    return p;
}

Phase GreedyPolicy::act(const StateBits& s) const {
    auto it = actions_.find(s);
    return it == actions_.end() ? tlc::kPhases.front() : it->second;
}

tlc::Policy GreedyPolicy::as_function() const {
    return [self = *this](const StateBits& s) { return self.act(s); };
}

std::string GreedyPolicy::to_json() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [state, phase] : actions_) j[to_bit_string(state)] = std::string(tlc::to_string(phase));
    return j.dump(1) + "\n";
}

GreedyPolicy GreedyPolicy::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(std::string("policy: ") + e.what());
    }
    if (!j.is_object()) throw DataError("policy: expected an object of state bits to phase");
    GreedyPolicy p;
    std::size_t width = 0;
    for (const auto& [bits, phase] : j.items()) {
        if (!phase.is_string()) throw DataError("policy: phase for " + bits + " must be a string");
        StateBits s = from_bit_string(bits);
        if (width != 0 && s.size() != width) throw DataError("policy: inconsistent state widths");
        width = s.size();
        p.actions_[std::move(s)] = tlc::parse_phase(phase.get<std::string>());
    }
    return p;
}

}  // namespace tracekc::rl
