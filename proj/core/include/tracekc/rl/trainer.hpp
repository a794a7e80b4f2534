#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tracekc/rl/policy.hpp"
#include "tracekc/rl/q_learning.hpp"
#include "tracekc/tlc/intersection.hpp"

namespace tracekc::rl {

struct TrainerConfig {
    tlc::IntersectionConfig env = tlc::IntersectionConfig::standard();
    std::size_t depth = 1;
    int episodes = 100;
    int episode_seconds = 5400;
    double alpha = 0.1;
    double gamma = 0.75;
    std::size_t replay_capacity = 50000;
    std::size_t batch_size = 100;
    std::size_t batches_per_episode = 800;
};

struct TrainResult {
    GreedyPolicy policy;
    std::vector<std::int64_t> episode_rewards;
    QTable table{0.1, 0.75};
};

// Episode e (1-based) runs epsilon-greedy with epsilon(e, E) on an environment
// seeded by derive_seed(seed, e); after the episode, replay batches update Q.
TrainResult train(const TrainerConfig& config, std::uint64_t seed);

// "episode,total_reward" header, one row per episode.
std::string rewards_csv(const std::vector<std::int64_t>& rewards);

}  // namespace tracekc::rl
