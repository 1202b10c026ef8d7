#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fdspc/planner_25d.hpp"
#include "fdspc/velocity.hpp"

namespace fdspc::cli {

/// Numeric knobs that may arrive from the scenario file's "params" object
/// or from command-line flags; flags win over file values over defaults.
struct ParamOverrides {
    std::optional<double> dt, rho, rho_z, theta_a1, theta_a2, l_add, back_obs, theta_max;
    std::optional<double> v_max, v_min, accel;
};

struct RunConfig {
    std::string scenario_path;
    std::string planner = "fdspc";  // fdspc|fdspc25d|astar|dijkstra|gbfs|rrt|all
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    int repetitions = 0;  // 0 -> default for stochastic planners, 1 otherwise
    double r_robot = -1.0;  // < 0 -> no inflation
    bool validate_only = false;
    ParamOverrides flags;
};

struct ResolvedParams {
    PlannerConfig planner;
    CrossConfig cross;
    VelocityConfig velocity;
};

/// Apply defaults <- scenario params <- flag overrides.
ResolvedParams resolve_params(const ParamOverrides& file_params, const ParamOverrides& flags);
ParamOverrides parse_params_json(const std::string& json_text);

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    bool ok() const { return errors.empty(); }
};

/// Static checks without running planners: file existence, hard constraint
/// theta_a2 < theta_a1, and warnings for values outside the recommended
/// operating ranges.
ValidationReport validate(const RunConfig& config);

/// Exit status: 0 all planners succeeded, 2 some planner found no path,
/// 1 usage or I/O error. Writes trajectory CSV, report JSON/CSV, map+path
/// SVG and (for fdspc planners) the exploration-tree SVG into out_dir.
int run(const RunConfig& config);

std::string trajectory_to_csv(const Trajectory& t);
Trajectory trajectory_from_csv(const std::string& csv);

}  // namespace fdspc::cli
