#pragma once

#include <array>
#include <cstddef>
#include <random>
#include <unordered_map>
#include <vector>

#include "tracekc/encode/trace_set.hpp"
#include "tracekc/tlc/intersection.hpp"

namespace tracekc::rl {

using tlc::Phase;
using ActionValues = std::array<double, 4>;

struct Transition {
    StateBits state;
    Phase action = Phase::NS;
    double reward = 0.0;
    StateBits next_state;
};

// Q over visited states only; missing entries read as 0.
class QTable {
public:
    // Throws std::invalid_argument unless alpha > 0 and gamma in [0, 1].
    QTable(double alpha, double gamma);

    double alpha() const { return alpha_; }
    double gamma() const { return gamma_; }

    ActionValues values(const StateBits& s) const;
    double value(const StateBits& s, Phase a) const { return values(s)[static_cast<std::size_t>(a)]; }
    void set(const StateBits& s, Phase a, double q);
    double max_value(const StateBits& s) const;
    // argmax, ties to the earliest phase
    Phase greedy(const StateBits& s) const;

    std::size_t size() const { return q_.size(); }
    const std::unordered_map<StateBits, ActionValues>& entries() const { return q_; }

private:
    double alpha_;
    double gamma_;
    std::unordered_map<StateBits, ActionValues> q_;
};

// Q(s,a) <- Q(s,a) + alpha (r + gamma max_a' Q(s',a') - Q(s,a)); returns the new value.
double q_update(QTable& table, const Transition& t);

// Linear decay 1 - e/E for episode e in 1..E; throws std::out_of_range otherwise.
double epsilon(int episode, int total_episodes);

class ReplayBuffer {
public:
    explicit ReplayBuffer(std::size_t capacity);

    void push(Transition t);
    std::size_t size() const { return items_.size(); }
    std::size_t capacity() const { return capacity_; }

    // Uniform without replacement within the batch; returns min(n, size()) items.
    std::vector<const Transition*> sample(std::size_t n, std::mt19937_64& rng) const;

private:
    std::size_t capacity_;
    std::size_t next_ = 0;
    std::vector<Transition> items_;
};

}  // namespace tracekc::rl
