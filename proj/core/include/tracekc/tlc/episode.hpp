#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "tracekc/encode/trace_set.hpp"
#include "tracekc/tlc/simulator.hpp"

namespace tracekc::tlc {

using Policy = std::function<Phase(const StateBits& observed)>;

Policy fixed_policy(Phase phase);
// Serves the phase whose movements have the most occupied observed cells;
// ties follow phase order.
Policy occupancy_policy(const IntersectionConfig& config, std::size_t depth);

Schema tlc_schema(const IntersectionConfig& config, std::size_t depth);

struct EpisodeSummary {
    std::int64_t total_reward = 0;
    std::int64_t total_wait = 0;  // W at the end
    std::int64_t vehicles = 0;    // entered
    std::int64_t departed = 0;
    double mean_wait = 0.0;       // W / vehicles
    std::size_t decisions = 0;
    std::int64_t seconds = 0;
};

struct EpisodeResult {
    TraceSet traces;
    EpisodeSummary summary;
};

inline constexpr int kEpisodeSeconds = 5400;

// Resets `sim` with `seed`, then at every decision instant records the
// observed state and the policy's action and steps, until `duration` seconds
// have elapsed.
EpisodeResult run_episode(Simulator& sim, const Policy& policy, std::size_t depth, int duration, std::uint64_t seed);

std::string summary_to_json(const EpisodeSummary& summary);

}  // namespace tracekc::tlc
