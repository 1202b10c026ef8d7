#include "fdspc/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "fdspc/baselines.hpp"
#include "fdspc/metrics.hpp"
#include "fdspc/svg_render.hpp"

namespace fdspc::cli {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

double pick(const std::optional<double>& flag, const std::optional<double>& file, double dflt) {
    if (flag) return *flag;
    if (file) return *file;
    return dflt;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

ParamOverrides parse_params_json(const std::string& json_text) {
    ParamOverrides p;
    if (json_text.empty()) return p;
    const auto j = nlohmann::json::parse(json_text);
    const auto get = [&](const char* key) -> std::optional<double> {
        if (j.contains(key)) return j.at(key).get<double>();
        return std::nullopt;
    };
    p.dt = get("dt");
    p.rho = get("rho");
    p.rho_z = get("rho_z");
    p.theta_a1 = get("theta_a1");
    p.theta_a2 = get("theta_a2");
    p.l_add = get("l_add");
    p.back_obs = get("back_obs");
    p.theta_max = get("theta_max");
    p.v_max = get("v_max");
    p.v_min = get("v_min");
    p.accel = get("accel");
    return p;
}

ResolvedParams resolve_params(const ParamOverrides& file_params, const ParamOverrides& flags) {
    ResolvedParams r;
    r.planner.dt = pick(flags.dt, file_params.dt, 0.01);
    r.planner.rho = pick(flags.rho, file_params.rho, 0.4);
    r.planner.theta_a1 = pick(flags.theta_a1, file_params.theta_a1, 0.1);
    r.planner.theta_a2 = pick(flags.theta_a2, file_params.theta_a2, r.planner.theta_a1 / 5.0);
    r.planner.l_add = pick(flags.l_add, file_params.l_add, 0.5);
    r.planner.back_obs = pick(flags.back_obs, file_params.back_obs, 0.5);
    r.cross.rho_z = pick(flags.rho_z, file_params.rho_z, 0.4);
    r.cross.theta_max = pick(flags.theta_max, file_params.theta_max, 0.5235987755982988);
    r.cross.back_obs = r.planner.back_obs;
    r.velocity.v_max = pick(flags.v_max, file_params.v_max, 1.0);
    r.velocity.v_min = pick(flags.v_min, file_params.v_min, 0.2);
    r.velocity.accel = pick(flags.accel, file_params.accel, 0.5);
    return r;
}

ValidationReport validate(const RunConfig& config) {
    ValidationReport rep;
    std::string params_json;
    if (config.scenario_path.empty()) {
        rep.errors.push_back("no scenario file given");
    } else if (!fs::exists(config.scenario_path)) {
        rep.errors.push_back("scenario file not found: " + config.scenario_path);
    } else {
        try {
            params_json = parse_scenario(read_text_file(config.scenario_path)).params_json;
        } catch (const std::exception& e) {
            rep.errors.push_back(e.what());
        }
    }

    static const char* kPlanners[] = {"fdspc", "fdspc25d", "astar", "dijkstra",
                                      "gbfs",  "rrt",      "all"};
    bool known = false;
    for (const char* p : kPlanners) known = known || config.planner == p;
    if (!known) rep.errors.push_back("unknown planner: " + config.planner);

    ParamOverrides file_params;
    try {
        file_params = parse_params_json(params_json);
    } catch (const std::exception& e) {
        rep.errors.push_back(std::string("bad params object: ") + e.what());
    }
    const ResolvedParams r = resolve_params(file_params, config.flags);

    if (r.planner.dt <= 0.0) rep.errors.push_back("dt must be positive");
    if (r.planner.rho <= 0.0) rep.errors.push_back("rho must be positive");
    if (r.planner.theta_a1 <= 0.0 || r.planner.theta_a2 <= 0.0)
        rep.errors.push_back("sweep increments must be positive");
    if (r.planner.theta_a2 >= r.planner.theta_a1)
        rep.errors.push_back("theta_a2 must be strictly below theta_a1");
    if (r.planner.l_add <= 0.0) rep.errors.push_back("l_add must be positive");
    if (r.velocity.v_min < 0.0 || r.velocity.v_max <= r.velocity.v_min)
        rep.errors.push_back("need 0 <= v_min < v_max");
    if (r.velocity.accel <= 0.0) rep.errors.push_back("accel must be positive");

    // Recommended operating ranges; values outside them may fail to plan.
    const auto warn_range = [&](const char* name, double v, double lo, double hi) {
        if (v < lo - 1e-12 || v > hi + 1e-12) {
            char buf[128];
            std::snprintf(buf, sizeof(buf), "%s = %g outside recommended range [%g, %g]", name,
                          v, lo, hi);
            rep.warnings.emplace_back(buf);
        }
    };
    warn_range("dt", r.planner.dt, 0.01, 0.015);
    warn_range("rho", r.planner.rho, 0.3, 0.5);
    warn_range("theta_a1", r.planner.theta_a1, 0.1, 0.2);
    warn_range("l_add", r.planner.l_add, 0.4, 0.8);
    return rep;
}

std::string trajectory_to_csv(const Trajectory& t) {
    std::ostringstream out;
    out << "x,y,z,theta,kappa,tau_z,v,arc_length\n";
    for (std::size_t i = 0; i < t.waypoints.size(); ++i) {
        const PlannerState& s = t.waypoints.states[i];
        const double v = i < t.velocities.size() ? t.velocities[i] : 0.0;
        out << fmt(s.x) << ',' << fmt(s.y) << ',' << fmt(s.z) << ',' << fmt(s.theta) << ','
            << fmt(s.kappa) << ',' << fmt(s.tau_z) << ',' << fmt(v) << ','
            << fmt(t.waypoints.arc_length[i]) << '\n';
    }
    return out.str();
}

Trajectory trajectory_from_csv(const std::string& csv) {
    Trajectory t;
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("trajectory csv: empty");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        PlannerState s;
        double v = 0.0, arc = 0.0;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf", &s.x, &s.y, &s.z,
                        &s.theta, &s.kappa, &s.tau_z, &v, &arc) != 8)
            throw std::runtime_error("trajectory csv: bad row: " + line);
        t.waypoints.states.push_back(s);
        t.waypoints.arc_length.push_back(arc);
        t.velocities.push_back(v);
    }
    return t;
}

namespace {

Trajectory pseudo_trajectory(const std::vector<Point25>& pts) {
    Trajectory t;
    double arc = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        PlannerState s;
        s.x = pts[i].x;
        s.y = pts[i].y;
        s.z = pts[i].z;
        if (i + 1 < pts.size())
            s.theta = std::atan2(pts[i + 1].y - pts[i].y, pts[i + 1].x - pts[i].x);
        else if (i > 0)
            s.theta = t.waypoints.states.back().theta;
        if (i > 0) arc += distance(pts[i - 1], pts[i]);
        t.waypoints.states.push_back(s);
        t.waypoints.arc_length.push_back(arc);
        t.velocities.push_back(0.0);
    }
    return t;
}

struct PlannerOutcome {
    PathReport report;
    std::vector<Point25> path;
    std::optional<PlanResult> plan_result;
    Trajectory trajectory;
};

}  // namespace

int run(const RunConfig& config) {
    const ValidationReport v = validate(config);
    for (const auto& w : v.warnings) std::cerr << "warning: " << w << "\n";
    if (!v.ok()) {
        for (const auto& e : v.errors) std::cerr << "error: " << e << "\n";
        return 1;
    }
    if (config.validate_only) return 0;

    Scenario sc;
    ResolvedParams params;
    WorldModel world;
    try {
        sc = parse_scenario(read_text_file(config.scenario_path));
        params = resolve_params(parse_params_json(sc.params_json), config.flags);
        world = WorldModel::from_spec(sc.map);
        if (config.r_robot >= 0.0) world = world.inflate(config.r_robot);
        fs::create_directories(config.out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    std::vector<std::string> planners;
    if (config.planner == "all")
        planners = {"fdspc", "fdspc25d", "astar", "dijkstra", "gbfs", "rrt"};
    else
        planners = {config.planner};

    const std::string scenario_name = fs::path(config.scenario_path).stem().string();
    std::vector<PathReport> reports;
    bool any_no_path = false;

    for (const auto& name : planners) {
        PlannerOutcome oc;
        const bool stochastic = name == "rrt";
        const int reps = config.repetitions > 0
                             ? config.repetitions
                             : (stochastic ? kDefaultStochasticRuns : 1);
        const PlannerFn fn = [&](std::uint64_t seed) -> std::optional<std::vector<Point25>> {
            if (name == "fdspc" || name == "fdspc25d") {
                PlanResult res = name == "fdspc"
                                     ? plan(world, sc.start, sc.goal, params.planner)
                                     : plan_25d(world, sc.start, sc.goal, params.planner,
                                                params.cross);
                if (!res.success()) {
                    oc.plan_result = std::move(res);
                    return std::nullopt;
                }
                auto pts = res.waypoints.points();
                oc.plan_result = std::move(res);
                return pts;
            }
            if (name == "rrt") return rrt(world, sc.start.position(), sc.goal, seed);
            GridCell s{world.cell_x(sc.start.x), world.cell_y(sc.start.y)};
            GridCell g{world.cell_x(sc.goal.x), world.cell_y(sc.goal.y)};
            const GridSearchKind kind = name == "astar"    ? GridSearchKind::astar
                                        : name == "dijkstra" ? GridSearchKind::dijkstra
                                                             : GridSearchKind::gbfs;
            const auto path = grid_search(world, s, g, kind);
            if (!path) return std::nullopt;
            return path->points;
        };

        oc.report = instrumented_run(name, fn, stochastic, reps, config.seed);
        oc.report.scenario = scenario_name;
        reports.push_back(oc.report);
        if (!oc.report.success) {
            any_no_path = true;
            std::cerr << name << ": no path found\n";
        }

        // Artifacts reflect the run at the base seed.
        try {
            const auto base = fn(config.seed);
            oc.path = base ? *base : std::vector<Point25>{};
            if (oc.plan_result && oc.plan_result->success())
                oc.trajectory =
                    make_trajectory(sc.start, oc.plan_result->profile, params.velocity);
            else
                oc.trajectory = pseudo_trajectory(oc.path);

            const fs::path dir(config.out_dir);
            write_file(dir / (name + "_trajectory.csv"), trajectory_to_csv(oc.trajectory));
            write_file(dir / (name + "_path.svg"),
                       render_map_svg(world, oc.path, sc.start.position(), sc.goal));
            if (oc.plan_result)
                write_file(dir / (name + "_tree.svg"),
                           render_tree_svg(world, oc.plan_result->tree_json, oc.path,
                                           sc.start.position(), sc.goal));
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }

    try {
        write_file(fs::path(config.out_dir) / "report.json", reports_to_json(reports));
        write_file(fs::path(config.out_dir) / "report.csv", reports_to_csv(reports));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return any_no_path ? 2 : 0;
}

}  // namespace fdspc::cli
