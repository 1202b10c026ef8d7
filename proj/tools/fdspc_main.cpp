#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "fdspc/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"fdspc - smooth path planning by continuous curvature integration"};

    fdspc::cli::RunConfig config;
    std::optional<double> dt, rho, rho_z, theta_a1, theta_a2, l_add, back_obs, theta_max;
    std::optional<double> v_max, v_min, accel;

    app.add_option("--scenario", config.scenario_path, "Scenario map file (JSON)")->required();
    app.add_option("--planner", config.planner,
                   "fdspc | fdspc25d | astar | dijkstra | gbfs | rrt | all");
    app.add_option("--out", config.out_dir, "Output directory");
    app.add_option("--seed", config.seed, "Random seed for sampling planners");
    app.add_option("--repetitions", config.repetitions,
                   "Runs to average for stochastic planners (0 = default)");
    app.add_option("--r-robot", config.r_robot,
                   "Robot radius for obstacle inflation (omit for none)");
    app.add_option("--dt", dt, "Integration step");
    app.add_option("--rho", rho, "Curvature rate of change");
    app.add_option("--rho-z", rho_z, "z-slope rate of change");
    app.add_option("--theta-a1", theta_a1, "Coarse sweep increment (rad)");
    app.add_option("--theta-a2", theta_a2, "Fine sweep increment (rad)");
    app.add_option("--l-add", l_add, "Linear extension length (m)");
    app.add_option("--back-obs", back_obs, "Collision retreat distance (m)");
    app.add_option("--theta-max", theta_max, "Max climb tilt (rad)");
    app.add_option("--v-max", v_max, "Velocity upper bound");
    app.add_option("--v-min", v_min, "Velocity lower bound");
    app.add_option("--accel", accel, "Pseudo-acceleration");
    app.add_flag("--validate-only", config.validate_only,
                 "Check the configuration and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    config.flags.dt = dt;
    config.flags.rho = rho;
    config.flags.rho_z = rho_z;
    config.flags.theta_a1 = theta_a1;
    config.flags.theta_a2 = theta_a2;
    config.flags.l_add = l_add;
    config.flags.back_obs = back_obs;
    config.flags.theta_max = theta_max;
    config.flags.v_max = v_max;
    config.flags.v_min = v_min;
    config.flags.accel = accel;

    return fdspc::cli::run(config);
}
