#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "fdspc/curvature.hpp"
#include "fdspc/search_tree.hpp"
#include "fdspc/world_model.hpp"

namespace fdspc {

struct PlannerConfig {
    double dt = 0.01;          // integration step (arc length, ds/dt = 1)
    double rho = 0.4;          // curvature rate of change, 1/(m*m)
    double theta_a1 = 0.1;     // coarse sweep increment, rad
    double theta_a2 = 0.02;    // fine sweep increment, rad (< theta_a1)
    double l_add = 0.5;        // linear extension length, m
    double back_obs = 0.5;     // retreat distance from a collision, m
    double goal_tol = 0.0;     // 0 -> 2*dt
    double heading_tol = 1e-6; // added to |kappa|*dt when matching bearings
    std::size_t max_nodes = 10000;
    double kappa_max = std::numeric_limits<double>::infinity();

    double goal_tolerance() const { return goal_tol > 0.0 ? goal_tol : 2.0 * dt; }
    std::size_t spiral_budget() const {
        return static_cast<std::size_t>(2.0 * 3.14159265358979323846 / (rho * dt * dt));
    }
};

struct PlanResult {
    enum class Status { success, exhausted, budget };
    Status status = Status::exhausted;
    CurvatureProfile profile;
    Waypoints waypoints;
    TreeStats tree_stats;
    std::string tree_json;  // exploration tree dump for rendering

    bool success() const { return status == Status::success; }
};

/// Thrown when the bearing chase exceeds its step budget (tight pursuit
/// orbit around the goal); carries the geometry built so far.
struct DegenerateSpiral : std::runtime_error {
    explicit DegenerateSpiral(CurvatureProfile built)
        : std::runtime_error("direct_plan: degenerate spiral, bearing never matched"),
          partial(std::move(built)) {}
    CurvatureProfile partial;
};

/// Direct planning: steer toward the bearing-to-goal (curvature ramped at
/// rate rho, bearing re-evaluated every step), then run straight for the
/// remaining distance. No collision checking here. Returns an empty profile
/// when already within goal tolerance.
CurvatureProfile direct_plan(const WorldModel& world, const PlannerState& state,
                             const Point25& goal, const PlannerConfig& cfg);

struct ExploreResult {
    bool sweep_exhausted = false;
    CurvatureProfile kappa_a;     // P_fimin prefix of the free probe
    CurvatureProfile free_probe;  // untrimmed collision-free probe
    double chosen_offset = 0.0;   // bearing offset of the free probe, rad
};

/// Two-phase angular sweep around an obstacle: coarse +/- theta_a1 offsets
/// from the bearing (left first) until a probe is collision-free, then a
/// fine re-advance by theta_a2 from one coarse step back. sweep_exhausted is
/// set when the offset bound pi is reached with no free probe.
ExploreResult explore_plan(const WorldModel& world, const PlannerState& state,
                           const Point25& goal, const PlannerConfig& cfg);

/// Prefix of kappa_free ending at the waypoint closest to kappa_old's
/// collision point, with the trailing curvature ramped back to exactly 0 at
/// rate rho. The prefix shrinks by whole steps until the ramp-out stays
/// collision-free. Throws on an empty kappa_free.
CurvatureProfile p_fimin(const WorldModel& world, const PlannerState& entry,
                         const CurvatureProfile& kappa_free, const CurvatureProfile& kappa_old,
                         std::size_t o_idx_old, const PlannerConfig& cfg);

/// FDSPC main loop on the plane: direct planning, branch-point insertion on
/// collision, heuristic pops feeding the exploration sweep, pseudo-feasible
/// mitigation, and reconstruction of the final profile.
/// Throws std::invalid_argument when start or goal is occupied.
PlanResult plan(const WorldModel& world, const PlannerState& start, const Point25& goal,
                const PlannerConfig& cfg = {});

namespace detail {

/// Hook the 2.5-D layer uses to commit an obstacle crossing before the
/// planar sweep runs. Returns the locator of the inserted crossing node, or
/// nullopt to fall back to planar exploration.
struct CrossHook {
    virtual ~CrossHook() = default;
    virtual std::optional<std::string> try_cross(PathTree& tree, const std::string& cur,
                                                 const CurvatureProfile& kappa_d,
                                                 const Waypoints& wp,
                                                 std::size_t collision_idx) const = 0;
};

PlanResult plan_engine(const WorldModel& world, const PlannerState& start, const Point25& goal,
                       const PlannerConfig& cfg, const CrossHook* cross);

/// Steps back from the collision index by back_obs of arc length.
std::size_t branch_index(const CurvatureProfile& profile, std::size_t collision_idx,
                         const PlannerConfig& cfg);

/// Prefix of `probe` up to `cut` steps with a rate-bounded ramp back to zero
/// curvature appended; shrinks the cut until the result is collision-free.
CurvatureProfile trim_with_rampout(const WorldModel& world, const PlannerState& entry,
                                   const CurvatureProfile& probe, std::size_t cut,
                                   const PlannerConfig& cfg);

}  // namespace detail

}  // namespace fdspc
