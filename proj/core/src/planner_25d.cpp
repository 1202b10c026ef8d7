#include "fdspc/planner_25d.hpp"

#include <algorithm>
#include <cmath>

namespace fdspc {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

std::optional<ObstacleSpan> measure_span(const WorldModel& world, const PlannerState& from,
                                         double dt) {
    const double limit = world.width_m() + world.height_m();
    const double cth = std::cos(from.theta);
    const double sth = std::sin(from.theta);

    ObstacleSpan span;
    bool in_obstacle = false;
    for (double t = dt; t <= limit; t += dt) {
        const double x = from.x + t * cth;
        const double y = from.y + t * sth;
        const int ix = world.cell_x(x);
        const int iy = world.cell_y(y);
        if (!world.in_bounds(ix, iy)) return std::nullopt;  // ran off the map
        const bool occ = world.occupied_cell(ix, iy);
        if (!in_obstacle) {
            if (occ) {
                in_obstacle = true;
                span.dist_front = t;
                span.top_z = world.cell_top(ix, iy);
            }
        } else {
            if (occ) {
                span.top_z = std::max(span.top_z, world.cell_top(ix, iy));
            } else {
                span.dist_far = t;
                return span;
            }
        }
    }
    return std::nullopt;
}

Crossability crossability_check(const WorldModel& world, const Waypoints& path,
                                std::size_t collision_idx, const CrossConfig& ccfg,
                                const PlannerConfig& cfg) {
    const double dt = cfg.dt;
    const std::size_t back = static_cast<std::size_t>(std::llround(ccfg.back_obs / dt));
    const std::size_t r_idx = collision_idx > back ? collision_idx - back : 0;
    if (r_idx >= path.size()) throw std::invalid_argument("crossability_check: bad collision index");
    const PlannerState r = path.states[r_idx];
    if (world.occupied_at(r.position()))
        throw RetreatBlocked("crossability_check: retreat point is occupied");

    const auto span = measure_span(world, r, dt);
    if (!span || !std::isfinite(span->top_z)) return {false, 0.0};

    const double probe_len = span->dist_far + ccfg.back_obs;
    const double cth = std::cos(r.theta);
    const double sth = std::sin(r.theta);

    for (int j = 1;; ++j) {
        double phi = static_cast<double>(j) * cfg.theta_a2;
        bool last = false;
        if (phi >= ccfg.theta_max - 1e-12) {
            phi = ccfg.theta_max;
            last = true;
        }
        if (phi <= 0.0) break;

        const double slope = std::tan(phi);
        bool clears = true;
        for (double t = dt; t <= probe_len + 1e-12; t += dt) {
            const Point25 p{r.x + t * cth, r.y + t * sth, r.z + t * slope};
            if (world.occupied_at(p)) {
                clears = t > span->dist_far + 1e-9;
                break;
            }
        }
        if (clears) return {true, phi};
        if (last) break;
    }
    return {false, 0.0};
}

CrossProfile build_cross_profile(const WorldModel& world, const PlannerState& entry,
                                 const ObstacleSpan& span, const CrossConfig& ccfg,
                                 const PlannerConfig& cfg) {
    if (ccfg.theta_max <= 0.0 || ccfg.theta_max >= kPi / 2.0)
        throw Uncrossable("build_cross_profile: theta_max outside (0, pi/2)");
    const double dt = cfg.dt;
    const double z_clear = span.top_z - entry.z + dt;

    CrossProfile out;
    if (z_clear <= 0.0 || span.top_z <= entry.z) {
        // Nothing to climb; emit a flat pass-through of the span.
        const std::size_t n = static_cast<std::size_t>(
            std::ceil((span.dist_far + ccfg.back_obs / 2.0) / dt));
        out.profile.dt = dt;
        out.profile.rho = cfg.rho;
        out.profile.rho_z = ccfg.rho_z;
        out.profile.kappas.assign(n, 0.0);
        out.profile.taus.assign(n, 0.0);
        out.s3 = out.s4 = out.s5 = out.s6 = out.s7 = out.s8 = n;
        return out;
    }
    if (z_clear > 3.0) throw Uncrossable("build_cross_profile: obstacle too tall");

    const double tau_cap = std::tan(ccfg.theta_max);
    const double tri_peak = std::sqrt(z_clear * ccfg.rho_z);
    double l_up = tri_peak <= tau_cap ? 2.0 * std::sqrt(z_clear / ccfg.rho_z)
                                      : z_clear / tau_cap + tau_cap / ccfg.rho_z;
    l_up += 2.0 * dt;

    // The climb is inverse integration in the z channel: tau ramps at rho_z
    // and its integral (the height gained) lands exactly on z_clear.
    const CurvatureProfile climb = inverse_integrate(z_clear, ccfg.rho_z, l_up, dt, tau_cap);
    const std::size_t n_up = climb.size();
    const std::size_t n_front =
        static_cast<std::size_t>(std::floor(span.dist_front / dt + 1e-9));
    if (n_front < n_up) throw Uncrossable("build_cross_profile: insufficient approach run-up");
    const std::size_t flat = n_front - n_up;
    const std::size_t n_far = static_cast<std::size_t>(std::ceil(span.dist_far / dt - 1e-9)) + 1;
    const std::size_t level = n_far > n_front ? n_far - n_front : 0;
    const std::size_t tail = static_cast<std::size_t>(std::llround(ccfg.back_obs / 2.0 / dt));

    std::vector<double> taus;
    taus.reserve(flat + 2 * n_up + level + tail);
    taus.insert(taus.end(), flat, 0.0);
    taus.insert(taus.end(), climb.kappas.begin(), climb.kappas.end());
    taus.insert(taus.end(), level, 0.0);
    for (std::size_t i = 0; i < n_up; ++i) taus.push_back(-climb.kappas[n_up - 1 - i]);
    taus.insert(taus.end(), tail, 0.0);

    out.profile.dt = dt;
    out.profile.rho = cfg.rho;
    out.profile.rho_z = ccfg.rho_z;
    out.profile.kappas.assign(taus.size(), 0.0);
    out.profile.taus = std::move(taus);

    double peak = 0.0;
    std::size_t peak_idx = 0;
    for (std::size_t i = 0; i < n_up; ++i) {
        if (std::abs(climb.kappas[i]) > peak) {
            peak = std::abs(climb.kappas[i]);
            peak_idx = i;
        }
    }
    out.tilt = std::atan(peak);
    out.s3 = flat + peak_idx + 1;
    out.s4 = flat + n_up;
    out.s5 = n_far;
    out.s6 = flat + n_up + level;
    out.s7 = out.s6 + n_up;
    out.s8 = out.profile.size();

    const Waypoints wp = integrate(entry, out.profile);
    if (world.first_collision(wp))
        throw Uncrossable("build_cross_profile: crossing profile collides");
    const PlannerState& exit = wp.back();
    const double terrain = world.elevation_at(exit.x, exit.y);
    if (std::abs(exit.z - terrain) > dt + 1e-9)
        throw Uncrossable("build_cross_profile: exit does not rejoin the terrain");
    return out;
}

namespace {

struct Hook25 final : detail::CrossHook {
    Hook25(const WorldModel& w, const PlannerConfig& c, const CrossConfig& cc)
        : world(w), cfg(c), ccfg(cc) {}

    const WorldModel& world;
    PlannerConfig cfg;
    CrossConfig ccfg;

    static char vacant(const PathTree::Node& n) {
        if (!n.left) return 'L';
        if (!n.right) return 'R';
        return 0;
    }

    std::optional<std::string> try_cross(PathTree& tree, const std::string& cur,
                                         const CurvatureProfile& kappa_d, const Waypoints& wp,
                                         std::size_t collision_idx) const override {
        if (ccfg.theta_max <= 0.0) return std::nullopt;

        Crossability cb;
        try {
            cb = crossability_check(world, wp, collision_idx, ccfg, cfg);
        } catch (const RetreatBlocked&) {
            return std::nullopt;
        } catch (const std::invalid_argument&) {
            return std::nullopt;
        }
        if (!cb.crossable) return std::nullopt;

        // The crossing runs straight; use the zero-curvature stretch that
        // leads into the collision as its approach.
        std::size_t run_start = collision_idx;
        while (run_start > 0 && std::abs(kappa_d.kappas[run_start - 1]) <= 1e-12) --run_start;
        if (run_start == collision_idx) return std::nullopt;  // collided mid-turn
        const std::size_t cut = run_start == 0 ? 0 : run_start + 1;

        const PlannerState entry = cut == 0 ? tree.at(cur).exit_state : wp.states[cut];
        const auto span = measure_span(world, entry, cfg.dt);
        if (!span || !std::isfinite(span->top_z)) return std::nullopt;

        CrossProfile cp;
        try {
            cp = build_cross_profile(world, entry, *span, ccfg, cfg);
        } catch (const Uncrossable&) {
            return std::nullopt;
        }

        std::string loc = cur;
        if (cut > 0) {
            const char side = vacant(tree.at(loc));
            if (!side) return std::nullopt;
            loc = tree.insert(loc, side, prefix(kappa_d, cut));
        }
        const char side = vacant(tree.at(loc));
        if (!side) return std::nullopt;
        return tree.insert(loc, side, cp.profile);
    }
};

}  // namespace

PlanResult plan_25d(const WorldModel& world, const PlannerState& start, const Point25& goal,
                    const PlannerConfig& cfg, const CrossConfig& ccfg) {
    if (ccfg.rho_z <= 0.0) throw std::invalid_argument("plan_25d: rho_z must be positive");
    if (ccfg.theta_max < 0.0 || ccfg.theta_max >= kPi / 2.0)
        throw std::invalid_argument("plan_25d: theta_max must lie in [0, pi/2)");
    const Hook25 hook(world, cfg, ccfg);
    return detail::plan_engine(world, start, goal, cfg, &hook);
}

}  // namespace fdspc
