#pragma once

#include <optional>
#include <stdexcept>

#include "fdspc/planner.hpp"

namespace fdspc {

struct CrossConfig {
    double theta_max = 0.5235987755982988;  // max climb tilt, rad (30 deg)
    double rho_z = 0.4;                     // rate of change of tau_z
    double back_obs = 0.5;                  // shared retreat distance, m
};

/// Obstacle extent along a straight probe ray, measured from a reference
/// state: distance to the front edge, distance to the far edge, and the
/// highest obstacle top over the span (absolute z).
struct ObstacleSpan {
    double dist_front = 0.0;
    double dist_far = 0.0;
    double top_z = 0.0;
};

struct Crossability {
    bool crossable = false;
    double tilt = 0.0;  // smallest clearing tilt, rad
};

/// Thrown when a crossing that looked feasible cannot be built (no run-up,
/// profile collides, or it fails to rejoin the terrain).
struct Uncrossable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when the back_obs retreat point is itself occupied.
struct RetreatBlocked : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Walk a straight ray from `from` along its heading: first planar-occupied
/// sample marks the front edge, the next planar-free sample the far edge.
/// nullopt when the ray leaves the map before clearing the obstacle.
std::optional<ObstacleSpan> measure_span(const WorldModel& world, const PlannerState& from,
                                         double dt);

/// z-tilt probing: retreat back_obs before the collision, then cast straight
/// rays at increasing tilt (theta_a2 increments) up to theta_max. Crossable
/// at the smallest tilt whose ray first collides beyond the obstacle's far
/// edge or not at all. Throws RetreatBlocked when the retreat point is
/// occupied.
Crossability crossability_check(const WorldModel& world, const Waypoints& path,
                                std::size_t collision_idx, const CrossConfig& ccfg,
                                const PlannerConfig& cfg);

/// Smooth vertical crossing profile with anchor indices into its waypoints:
/// s3 = level-off applied on the ascent, s4 = level reached, s5 = abeam the
/// far edge, s6 = descent begins, s7 = touchdown, s8 = rejoin margin end.
struct CrossProfile {
    CurvatureProfile profile;  // kappa = 0 in-plane; taus populated
    std::size_t s3 = 0, s4 = 0, s5 = 0, s6 = 0, s7 = 0, s8 = 0;
    double tilt = 0.0;  // peak climb tilt actually used, rad
};

/// Build the five-phase tau_z profile over an obstacle span: flat approach,
/// rate-limited ascent completing at the front edge, level pass over the
/// top, mirrored descent past the far edge, and a back_obs/2 rejoin margin.
/// tau_z is 0 at both ends and the exit rejoins the terrain within dt.
/// Throws Uncrossable when no collision-free construction exists.
CrossProfile build_cross_profile(const WorldModel& world, const PlannerState& entry,
                                 const ObstacleSpan& span, const CrossConfig& ccfg,
                                 const PlannerConfig& cfg);

/// FDSPC with z-axis expansion: planar collisions first attempt a crossing
/// (crossability check + cross profile); only uncrossable obstacles fall
/// back to the planar exploration sweep. With theta_max = 0 the output is
/// identical to plan().
PlanResult plan_25d(const WorldModel& world, const PlannerState& start, const Point25& goal,
                    const PlannerConfig& cfg = {}, const CrossConfig& ccfg = {});

}  // namespace fdspc
