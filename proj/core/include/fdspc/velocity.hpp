#pragma once

#include <cstddef>
#include <vector>

#include "fdspc/curvature.hpp"

namespace fdspc {

struct VelocityConfig {
    double accel = 0.5;    // pseudo-acceleration, applied as accel*dt per step
    double v_max = 1.0;
    double v_min = 0.2;
    double v_start = 0.0;
    double v_end = 0.0;
    std::size_t lookahead = 0;  // 0 -> ceil((v_max - v_min)/(accel*dt))

    std::size_t lookahead_steps(double dt) const {
        if (lookahead > 0) return lookahead;
        return static_cast<std::size_t>(std::ceil((v_max - v_min) / (accel * dt) - 1e-9));
    }
};

/// Sampled waypoints with a velocity per point.
struct Trajectory {
    Waypoints waypoints;
    std::vector<double> velocities;  // one per waypoint (profile steps + 1)
};

/// Curvature-based velocity over a profile: accelerate on straight, level
/// steps below v_max; decelerate toward v_min when any step within the
/// lookahead window is curved or tilted; hold otherwise. The start ramp
/// raises v from v_start and a backward pass lands v on v_end, both
/// rate-bounded by accel*dt.
std::vector<double> plan_velocity(const CurvatureProfile& profile, const VelocityConfig& cfg);

/// Convenience: integrate and attach velocities.
Trajectory make_trajectory(const PlannerState& start, const CurvatureProfile& profile,
                           const VelocityConfig& cfg);

}  // namespace fdspc
