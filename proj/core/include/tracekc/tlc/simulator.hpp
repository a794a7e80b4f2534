#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "tracekc/encode/trace_set.hpp"
#include "tracekc/tlc/intersection.hpp"

namespace tracekc::tlc {

// Deterministic mixing of a base seed with an index (splitmix64).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

struct Vehicle {
    std::size_t movement = 0;
    double position = 0.0;  // metres from the stop line
    double speed = 0.0;     // over the last tick
    std::int64_t slow_seconds = 0;  // w_theta(i, t)
};

struct StepResult {
    StateBits occupancy;  // full x_ij, movement-major
    std::int64_t reward = 0;
    int elapsed = 0;
    int yellow_seconds = 0;
};

// Single intersection, 1 s ticks. Per tick: Bernoulli arrivals at the far end
// of each movement, discharge at saturation flow for green movements whose
// head vehicle is at the stop line, then kinematics toward the stop line at
// free speed, bounded by the queue slot ahead.
class Simulator {
public:
    explicit Simulator(IntersectionConfig config);

    // Empties the network, seeds arrivals and draws this episode's rate scaling.
    void reset(std::uint64_t seed);
    // Same, with arrival rates used exactly as configured.
    void reset_unscaled(std::uint64_t seed);

    // Holds `phase` for green_hold seconds, preceded by the yellow interval
    // when it differs from the current phase.
    StepResult step(Phase phase);

    StateBits occupancy() const;
    // First `depth` cells of every movement; throws DataError if out of range.
    StateBits observe(std::size_t depth) const;

    // Inserts a vehicle at `position`; used to seed scenarios.
    void add_vehicle(std::size_t movement, double position);

    const IntersectionConfig& config() const { return config_; }
    const std::vector<double>& arrival_rates() const { return rates_; }
    std::optional<Phase> phase() const { return phase_; }
    std::int64_t time() const { return time_; }
    std::int64_t total_wait() const { return total_wait_; }  // W_t
    std::int64_t entered() const { return entered_; }
    std::int64_t departed() const { return departed_; }
    std::size_t present() const;
    const std::vector<std::vector<Vehicle>>& vehicles() const { return queues_; }

    // Called after every tick; `green` is empty during yellow.
    using TickObserver = std::function<void(const Simulator&, std::optional<Phase> green)>;
    void set_tick_observer(TickObserver observer) { observer_ = std::move(observer); }

private:
    void tick(std::optional<Phase> green);

    IntersectionConfig config_;
    std::vector<double> rates_;
    std::mt19937_64 rng_;
    std::vector<std::vector<Vehicle>> queues_;  // per movement, nearest first
    std::vector<double> credit_;
    std::optional<Phase> phase_;
    std::int64_t time_ = 0;
    std::int64_t total_wait_ = 0;
    std::int64_t entered_ = 0;
    std::int64_t departed_ = 0;
    TickObserver observer_;
};

}  // namespace tracekc::tlc
