#include "tracekc/tlc/intersection.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tracekc/error.hpp"

namespace tracekc::tlc {

std::string_view to_string(Phase p) {
    switch (p) {
        case Phase::NS: return "NS";
        case Phase::NSL: return "NSL";
        case Phase::EW: return "EW";
        case Phase::EWL: return "EWL";
    }
    return "NS";
}

Phase parse_phase(std::string_view label) {
    for (Phase p : kPhases)
        if (to_string(p) == label) return p;
    throw DataError("unknown phase: " + std::string(label));
}

std::vector<std::string> phase_labels() {
    std::vector<std::string> out;
    for (Phase p : kPhases) out.emplace_back(to_string(p));
    return out;
}

std::string Movement::name() const {
    static constexpr char kRoads[] = {'N', 'S', 'E', 'W'};
    std::string s;
    s += kRoads[static_cast<int>(road)];
    s += "-G";
    s += turn == Turn::Straight ? '0' : '1';
    return s;
}

bool phase_serves(Phase phase, const Movement& m) {
    bool ns = m.road == Road::N || m.road == Road::S;
    bool left = m.turn == Turn::Left;
    switch (phase) {
        case Phase::NS: return ns && !left;
        case Phase::NSL: return ns && left;
        case Phase::EW: return !ns && !left;
        case Phase::EWL: return !ns && left;
    }
    return false;
}

IntersectionConfig IntersectionConfig::standard(double straight_rate, double left_rate) {
    IntersectionConfig c;
    for (Road r : {Road::N, Road::S, Road::E, Road::W}) {
        c.movements.push_back(Movement{r, Turn::Straight, 3, straight_rate, kDefaultCellBoundaries});
        c.movements.push_back(Movement{r, Turn::Left, 1, left_rate, kDefaultCellBoundaries});
    }
    return c;
}

void IntersectionConfig::validate() const {
    if (movements.size() < 2) throw DataError("intersection needs at least two movements");
    if (green_hold <= 0) throw DataError("green hold must be positive");
    if (yellow < 0) throw DataError("yellow must be non-negative");
    if (free_speed <= 0 || saturation_headway <= 0 || jam_spacing <= 0) throw DataError("kinematics must be positive");
    if (rate_scale_min < 0 || rate_scale_max < rate_scale_min) throw DataError("bad arrival rate scaling range");
    for (const auto& m : movements) {
        const auto& b = m.cell_boundaries;
        if (b.size() < 2 || b.front() != 0.0) throw DataError(m.name() + ": boundaries must start at 0");
        if (!std::is_sorted(b.begin(), b.end(), std::less_equal<>{}) ||
            std::adjacent_find(b.begin(), b.end()) != b.end())
            throw DataError(m.name() + ": boundaries must be strictly increasing");
        if (b.back() != road_length) throw DataError(m.name() + ": last boundary must equal the road length");
        if (m.lanes < 1) throw DataError(m.name() + ": needs at least one lane");
        if (m.arrival_rate < 0 || m.arrival_rate > 1) throw DataError(m.name() + ": arrival rate must be in [0,1]");
    }
}

std::size_t IntersectionConfig::max_depth() const {
    std::size_t d = movements.empty() ? 0 : movements.front().num_cells();
    for (const auto& m : movements) d = std::min(d, m.num_cells());
    return d;
}

namespace {

std::string metres(double v) {
    std::ostringstream out;
    if (std::floor(v) == v)
        out << static_cast<long long>(v);
    else
        out << v;
    return out.str();
}

}  // namespace

std::vector<std::string> state_variable_names(const IntersectionConfig& config, std::size_t depth) {
    if (depth < 1 || depth > config.max_depth())
        throw DataError("observation depth must be in 1.." + std::to_string(config.max_depth()));
    std::vector<std::string> names;
    for (const auto& m : config.movements)
        for (std::size_t j = 0; j < depth; ++j)
            names.push_back(m.name() + "_" + metres(m.cell_boundaries[j]) + "-" + metres(m.cell_boundaries[j + 1]));
    return names;
}

}  // namespace tracekc::tlc
