#include "tracekc/rl/q_learning.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tracekc::rl {

QTable::QTable(double alpha, double gamma) : alpha_(alpha), gamma_(gamma) {
    if (!(alpha > 0)) throw std::invalid_argument("learning rate must be positive");
    if (gamma < 0 || gamma > 1) throw std::invalid_argument("discount must be in [0, 1]");
}

ActionValues QTable::values(const StateBits& s) const {
    auto it = q_.find(s);
    return it == q_.end() ? ActionValues{} : it->second;
}

void QTable::set(const StateBits& s, Phase a, double q) { q_[s][static_cast<std::size_t>(a)] = q; }

double QTable::max_value(const StateBits& s) const {
    ActionValues v = values(s);
    return *std::max_element(v.begin(), v.end());
}

Phase QTable::greedy(const StateBits& s) const {
    ActionValues v = values(s);
    return tlc::kPhases[static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin())];
}

double q_update(QTable& table, const Transition& t) {
    double current = table.value(t.state, t.action);
    double target = t.reward + table.gamma() * table.max_value(t.next_state);
    double updated = current + table.alpha() * (target - current);
    table.set(t.state, t.action, updated);
    return updated;
}

double epsilon(int episode, int total_episodes) {
    if (total_episodes < 1 || episode < 1 || episode > total_episodes)
        throw std::out_of_range("episode index " + std::to_string(episode) + " outside 1.." +
                                std::to_string(total_episodes));
    return 1.0 - static_cast<double>(episode) / static_cast<double>(total_episodes);
}

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw std::invalid_argument("replay capacity must be positive");
}

void ReplayBuffer::push(Transition t) {
    if (items_.size() < capacity_) {
        items_.push_back(std::move(t));
    } else {
        items_[next_] = std::move(t);
    }
    next_ = (next_ + 1) % capacity_;
}

std::vector<const Transition*> ReplayBuffer::sample(std::size_t n, std::mt19937_64& rng) const {
    const std::size_t total = items_.size();
    n = std::min(n, total);
    // Floyd's algorithm: n distinct indices in O(n).
    std::vector<std::size_t> chosen;
    chosen.reserve(n);
    for (std::size_t j = total - n; j < total; ++j) {
        std::size_t t = std::uniform_int_distribution<std::size_t>(0, j)(rng);
        if (std::find(chosen.begin(), chosen.end(), t) == chosen.end())
            chosen.push_back(t);
        else
            chosen.push_back(j);
    }
    std::vector<const Transition*> out;
    out.reserve(n);
    for (std::size_t i : chosen) out.push_back(&items_[i]);
    return out;
}

}  // namespace tracekc::rl
