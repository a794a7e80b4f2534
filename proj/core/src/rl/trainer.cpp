#include "tracekc/rl/trainer.hpp"

#include <random>
#include <sstream>

#include "tracekc/tlc/simulator.hpp"

namespace tracekc::rl {

TrainResult train(const TrainerConfig& config, std::uint64_t seed) {
    tlc::Simulator sim(config.env);
    sim.observe(config.depth);  // validates depth

    TrainResult result{{}, {}, QTable(config.alpha, config.gamma)};
    QTable& q = result.table;
    ReplayBuffer replay(config.replay_capacity);
    std::mt19937_64 rng(tlc::derive_seed(seed, 0));
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> any_phase(0, tlc::kPhases.size() - 1);

    for (int e = 1; e <= config.episodes; ++e) {
        const double eps = epsilon(e, config.episodes);
        sim.reset(tlc::derive_seed(seed, static_cast<std::uint64_t>(e)));
        std::int64_t total = 0;
        StateBits s = sim.observe(config.depth);
        while (sim.time() < config.episode_seconds) {
            Phase a = coin(rng) < eps ? tlc::kPhases[any_phase(rng)] : q.greedy(s);
            tlc::StepResult step = sim.step(a);
            total += step.reward;
            StateBits next = sim.observe(config.depth);
            replay.push(Transition{s, a, static_cast<double>(step.reward), next});
            s = std::move(next);
        }
        result.episode_rewards.push_back(total);

        for (std::size_t b = 0; b < config.batches_per_episode; ++b)
            for (const Transition* t : replay.sample(config.batch_size, rng)) q_update(q, *t);
    }
    result.policy = GreedyPolicy::from_table(q);
    return result;
}

std::string rewards_csv(const std::vector<std::int64_t>& rewards) {
    std::ostringstream out;
    out << "episode,total_reward\n";
    for (std::size_t i = 0; i < rewards.size(); ++i) out << i + 1 << ',' << rewards[i] << '\n';
    return out.str();
}

}  // namespace tracekc::rl
