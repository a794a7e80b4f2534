#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tracekc::tlc {

// Light phases, in the fixed tie-break order used everywhere.
enum class Phase : std::uint8_t { NS = 0, NSL = 1, EW = 2, EWL = 3 };
inline constexpr std::array<Phase, 4> kPhases{Phase::NS, Phase::NSL, Phase::EW, Phase::EWL};

std::string_view to_string(Phase p);
Phase parse_phase(std::string_view label);  // throws DataError
std::vector<std::string> phase_labels();

enum class Road : std::uint8_t { N, S, E, W };
enum class Turn : std::uint8_t { Straight = 0, Left = 1 };

struct Movement {
    Road road = Road::N;
    Turn turn = Turn::Straight;
    int lanes = 1;
    double arrival_rate = 0.0;            // vehicles per second, before episode scaling
    std::vector<double> cell_boundaries;  // metres from the stop line, strictly increasing, last = road length

    std::size_t num_cells() const { return cell_boundaries.empty() ? 0 : cell_boundaries.size() - 1; }
    std::string name() const;  // e.g. "E-G0"
};

bool phase_serves(Phase phase, const Movement& movement);

inline const std::vector<double> kDefaultCellBoundaries{0, 7, 14, 21, 28, 35, 42, 49, 100, 300, 750};

struct IntersectionConfig {
    std::vector<Movement> movements;
    double road_length = 750.0;
    int green_hold = 10;          // seconds per decision
    int yellow = 4;               // seconds inserted when the phase changes
    double speed_threshold = 0.1; // m/s; slower counts as waiting
    double free_speed = 13.9;     // m/s
    double saturation_headway = 2.0;  // seconds per departing vehicle per lane
    double jam_spacing = 7.5;         // metres per queued vehicle per lane
    double rate_scale_min = 0.5;      // per-episode random scaling of every arrival rate
    double rate_scale_max = 1.5;

    // Four roads x {straight (3 lanes), left (1 lane)}, ten cells each.
    static IntersectionConfig standard(double straight_rate = 0.03, double left_rate = 0.01);

    // Throws DataError on inconsistent geometry or timing.
    void validate() const;
    // Largest observation depth valid for every movement.
    std::size_t max_depth() const;
};

// "<R>-G<M>_<lo>-<hi>" for the first `depth` cells of every movement, movement-major.
std::vector<std::string> state_variable_names(const IntersectionConfig& config, std::size_t depth);

}  // namespace tracekc::tlc
