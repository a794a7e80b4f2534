#include "tracekc/tlc/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "tracekc/error.hpp"

namespace tracekc::tlc {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

Simulator::Simulator(IntersectionConfig config) : config_(std::move(config)) {
    config_.validate();
    reset_unscaled(0);
}

void Simulator::reset_unscaled(std::uint64_t seed) {
    rng_.seed(seed);
    queues_.assign(config_.movements.size(), {});
    credit_.assign(config_.movements.size(), 0.0);
    rates_.clear();
    for (const auto& m : config_.movements) rates_.push_back(m.arrival_rate);
    phase_.reset();
    time_ = total_wait_ = entered_ = departed_ = 0;
}

void Simulator::reset(std::uint64_t seed) {
    reset_unscaled(seed);
    std::uniform_real_distribution<double> scale(config_.rate_scale_min, config_.rate_scale_max);
    for (double& r : rates_) r = std::min(1.0, r * scale(rng_));
}

std::size_t Simulator::present() const {
    std::size_t n = 0;
    for (const auto& q : queues_) n += q.size();
    return n;
}

void Simulator::add_vehicle(std::size_t movement, double position) {
    if (movement >= queues_.size()) throw DataError("movement index out of range");
    if (position < 0 || position > config_.road_length) throw DataError("vehicle position outside the road");
    auto& q = queues_[movement];
    Vehicle v{movement, position, 0.0, 0};
    q.insert(std::upper_bound(q.begin(), q.end(), position,
                              [](double p, const Vehicle& other) { return p < other.position; }),
             v);
    ++entered_;
}

void Simulator::tick(std::optional<Phase> green) {
    const auto& movements = config_.movements;

    for (std::size_t i = 0; i < movements.size(); ++i) {
        if (rates_[i] <= 0.0) continue;
        if (std::bernoulli_distribution(rates_[i])(rng_)) {
            auto& q = queues_[i];
            double slot = std::floor(static_cast<double>(q.size()) / movements[i].lanes) * config_.jam_spacing;
            if (slot < config_.road_length) {
                q.push_back(Vehicle{i, config_.road_length, config_.free_speed, 0});
                ++entered_;
            }
        }
    }

    for (std::size_t i = 0; i < movements.size(); ++i) {
        if (!green || !phase_serves(*green, movements[i])) {
            credit_[i] = 0.0;
            continue;
        }
        double lanes = movements[i].lanes;
        credit_[i] = std::min(credit_[i] + lanes / config_.saturation_headway, lanes);
        auto& q = queues_[i];
        std::size_t gone = 0;
        while (credit_[i] >= 1.0 && gone < q.size() && q[gone].position <= 0.0) {
            credit_[i] -= 1.0;
            ++gone;
        }
        q.erase(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(gone));
        departed_ += static_cast<std::int64_t>(gone);
    }

    for (std::size_t i = 0; i < movements.size(); ++i) {
        auto& q = queues_[i];
        for (std::size_t k = 0; k < q.size(); ++k) {
            Vehicle& v = q[k];
            double slot = std::floor(static_cast<double>(k) / movements[i].lanes) * config_.jam_spacing;
            double next = std::max(std::min(slot, v.position), v.position - config_.free_speed);
            v.speed = v.position - next;
            v.position = next;
            if (v.speed < config_.speed_threshold) {
                ++v.slow_seconds;
                ++total_wait_;
            }
        }
    }

    ++time_;
    if (observer_) observer_(*this, green);
}

StepResult Simulator::step(Phase phase) {
    StepResult r;
    std::int64_t before = total_wait_;
    if (phase_ && *phase_ != phase) {
        for (int s = 0; s < config_.yellow; ++s) tick(std::nullopt);
        r.yellow_seconds = config_.yellow;
    }
    phase_ = phase;
    for (int s = 0; s < config_.green_hold; ++s) tick(phase);
    r.elapsed = r.yellow_seconds + config_.green_hold;
    r.reward = before - total_wait_;
    r.occupancy = occupancy();
    return r;
}

StateBits Simulator::occupancy() const {
    StateBits bits;
    for (std::size_t i = 0; i < queues_.size(); ++i) {
        const auto& b = config_.movements[i].cell_boundaries;
        std::size_t base = bits.size();
        bits.resize(base + b.size() - 1, false);
        for (const Vehicle& v : queues_[i]) {
            // Cell j covers [b_j, b_{j+1}); the far end is closed at the road length.
            auto it = std::upper_bound(b.begin(), b.end(), v.position);
            std::size_t j = static_cast<std::size_t>(it - b.begin());
            j = j == 0 ? 0 : j - 1;
            j = std::min(j, b.size() - 2);
            bits[base + j] = true;
        }
    }
    return bits;
}

StateBits Simulator::observe(std::size_t depth) const {
    if (depth < 1 || depth > config_.max_depth())
        throw DataError("observation depth must be in 1.." + std::to_string(config_.max_depth()));
    StateBits full = occupancy();
    StateBits out;
    out.reserve(config_.movements.size() * depth);
    std::size_t base = 0;
    for (const auto& m : config_.movements) {
        for (std::size_t j = 0; j < depth; ++j) out.push_back(full[base + j]);
        base += m.num_cells();
    }
    return out;
}

}  // namespace tracekc::tlc
