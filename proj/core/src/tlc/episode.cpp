#include "tracekc/tlc/episode.hpp"

#include <nlohmann/json.hpp>

namespace tracekc::tlc {

Policy fixed_policy(Phase phase) {
    return [phase](const StateBits&) { return phase; };
}

Policy occupancy_policy(const IntersectionConfig& config, std::size_t depth) {
    std::vector<std::array<bool, 4>> serves;
    for (const auto& m : config.movements) {
        std::array<bool, 4> s{};
        for (Phase p : kPhases) s[static_cast<std::size_t>(p)] = phase_serves(p, m);
        serves.push_back(s);
    }
    return [serves, depth](const StateBits& observed) {
        std::array<int, 4> score{};
        for (std::size_t i = 0; i < serves.size(); ++i)
            for (std::size_t j = 0; j < depth; ++j)
                if (observed[i * depth + j])
                    for (std::size_t p = 0; p < 4; ++p) score[p] += serves[i][p];
        std::size_t best = 0;
        for (std::size_t p = 1; p < 4; ++p)
            if (score[p] > score[best]) best = p;
        return kPhases[best];
    };
}

Schema tlc_schema(const IntersectionConfig& config, std::size_t depth) {
    return Schema{state_variable_names(config, depth), phase_labels()};
}

EpisodeResult run_episode(Simulator& sim, const Policy& policy, std::size_t depth, int duration, std::uint64_t seed) {
    sim.reset(seed);
    EpisodeResult result{TraceSet(tlc_schema(sim.config(), depth)), {}};
    result.traces.provenance()["seed"] = std::to_string(seed);
    result.traces.provenance()["depth"] = std::to_string(depth);

    while (sim.time() < duration) {
        StateBits s = sim.observe(depth);
        Phase a = policy(s);
        result.traces.add(Observation{std::move(s), std::string(to_string(a))});
        StepResult step = sim.step(a);
        result.summary.total_reward += step.reward;
        ++result.summary.decisions;
    }
    auto& sum = result.summary;
    sum.total_wait = sim.total_wait();
    sum.vehicles = sim.entered();
    sum.departed = sim.departed();
    sum.seconds = sim.time();
    sum.mean_wait = sum.vehicles > 0 ? static_cast<double>(sum.total_wait) / static_cast<double>(sum.vehicles) : 0.0;
    return result;
}

std::string summary_to_json(const EpisodeSummary& s) {
    nlohmann::ordered_json j;
    j["total_reward"] = s.total_reward;
    j["total_wait"] = s.total_wait;
    j["vehicles"] = s.vehicles;
    j["departed"] = s.departed;
    j["mean_wait"] = s.mean_wait;
    j["decisions"] = s.decisions;
    j["seconds"] = s.seconds;
    return j.dump();
}

}  // namespace tracekc::tlc
