#include "fdspc/planner.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace fdspc {

namespace {

constexpr double kPi = 3.14159265358979323846;

double bearing_to(const PlannerState& s, const Point25& goal) {
    return std::atan2(goal.y - s.y, goal.x - s.x);
}

std::size_t steps_for(double length, double dt) {
    if (length <= 0.0) return 0;
    const double q = length / dt;
    const double r = std::round(q);
    if (std::abs(q - r) < 1e-9) return static_cast<std::size_t>(r);
    return static_cast<std::size_t>(std::ceil(q));
}

double heading_sum(const CurvatureProfile& p) {
    double s = 0.0;
    for (double k : p.kappas) s += k;
    return s * p.dt;
}

}  // namespace

CurvatureProfile direct_plan(const WorldModel& /*world*/, const PlannerState& state,
                             const Point25& goal, const PlannerConfig& cfg) {
    if (!state.finite()) throw std::invalid_argument("direct_plan: non-finite state");
    const double dt = cfg.dt;
    const double rho = cfg.rho;
    const double rdt = rho * dt;

    CurvatureProfile out;
    out.dt = dt;
    out.rho = rho;

    PlannerState s = state;
    s.theta = wrap_pi(s.theta);
    if (planar_distance(s.position(), goal) <= cfg.goal_tolerance()) return out;

    // Turning segment: chase the live bearing with rate-limited curvature,
    // ramping back down so the segment exits near zero curvature.
    double kappa = s.kappa;
    bool at_goal = false;
    const std::size_t budget = cfg.spiral_budget();
    for (std::size_t it = 0;; ++it) {
        if (planar_distance(s.position(), goal) <= cfg.goal_tolerance()) {
            at_goal = true;  // the turn itself reached the goal
            break;
        }
        const double theta_g = bearing_to(s, goal);
        const double delta = wrap_pi(theta_g - s.theta);
        const double tol = std::abs(kappa) * dt + cfg.heading_tol;
        if (std::abs(delta) <= tol) break;
        if (it >= budget) throw DegenerateSpiral(out);

        const double stop = kappa * kappa / (2.0 * rho);
        const bool same_side = (kappa > 0.0) == (delta > 0.0);
        if (kappa != 0.0 && same_side && stop >= std::abs(delta)) {
            kappa = kappa > 0.0 ? std::max(0.0, kappa - rdt) : std::min(0.0, kappa + rdt);
        } else {
            kappa += delta > 0.0 ? rdt : -rdt;
            kappa = std::clamp(kappa, -cfg.kappa_max, cfg.kappa_max);
        }
        out.kappas.push_back(kappa);
        const double nx = s.x + std::cos(s.theta) * dt;
        const double ny = s.y + std::sin(s.theta) * dt;
        s.theta = wrap_pi(s.theta + kappa * dt);
        s.x = nx;
        s.y = ny;
        s.kappa = kappa;
    }

    if (at_goal) return out;  // already there; no straight leg to add

    // Exit the turn at exactly zero curvature so segments splice G2-clean.
    for (double k : ramp_to_zero(kappa, rdt)) {
        out.kappas.push_back(k);
        const double nx = s.x + std::cos(s.theta) * dt;
        const double ny = s.y + std::sin(s.theta) * dt;
        s.theta = wrap_pi(s.theta + k * dt);
        s.x = nx;
        s.y = ny;
        s.kappa = k;
    }

    const double remaining = planar_distance(s.position(), goal);
    const std::size_t straight = static_cast<std::size_t>(std::llround(remaining / dt));
    out.kappas.insert(out.kappas.end(), straight, 0.0);
    return out;
}

CurvatureProfile p_fimin(const WorldModel& world, const PlannerState& entry,
                         const CurvatureProfile& kappa_free, const CurvatureProfile& kappa_old,
                         std::size_t o_idx_old, const PlannerConfig& cfg) {
    if (kappa_free.empty()) throw std::invalid_argument("p_fimin: empty free profile");
    const Waypoints wf = integrate(entry, kappa_free);
    const Waypoints wo = integrate(entry, kappa_old);
    const std::size_t oi = std::min(o_idx_old, wo.size() - 1);
    const Point25 target = wo.states[oi].position();

    std::size_t jstar = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < wf.size(); ++j) {
        const double d = planar_distance(wf.states[j].position(), target);
        if (d < best) {
            best = d;
            jstar = j;
        }
    }
    return detail::trim_with_rampout(world, entry, kappa_free, jstar, cfg);
}

ExploreResult explore_plan(const WorldModel& world, const PlannerState& state,
                           const Point25& goal, const PlannerConfig& cfg) {
    const double dt = cfg.dt;
    PlannerState s = state;
    s.theta = wrap_pi(s.theta);
    const double theta0 = bearing_to(s, goal);
    const double dist_goal = planar_distance(s.position(), goal);

    ExploreResult out;

    CurvatureProfile probe0;
    probe0.dt = dt;
    probe0.rho = cfg.rho;
    probe0.kappas.assign(std::max<std::size_t>(1, steps_for(dist_goal, dt)), 0.0);
    const auto oc0 = world.first_collision(integrate(s, probe0));
    if (!oc0) {
        // Straight shot is already free; nothing to sweep.
        out.kappa_a = probe0;
        out.free_probe = probe0;
        return out;
    }

    CurvatureProfile kappa_old = probe0;
    std::size_t o_old = *oc0;
    std::size_t last_o = *oc0;

    const auto make_probe = [&](double offset) -> std::optional<CurvatureProfile> {
        const double delta = wrap_pi(theta0 + offset - s.theta);
        if (std::abs(delta) >= kPi - 1e-9) return std::nullopt;
        double l_int = static_cast<double>(last_o) * dt + cfg.l_add;
        if (std::abs(delta) > max_heading_change(cfg.rho, l_int) - 1e-12)
            l_int = 2.0 * std::sqrt(2.0 * std::abs(delta) / cfg.rho);
        return inverse_integrate(delta, cfg.rho, l_int, dt, cfg.kappa_max);
    };

    // Coarse phase: offsets +/- k*theta_a1 from the bearing, left first,
    // bounded by |offset| < pi.
    bool found = false;
    int side_found = 0;
    int k_found = 0;
    CurvatureProfile free_probe;
    double free_offset = 0.0;
    for (int k = 1; static_cast<double>(k) * cfg.theta_a1 < kPi - 1e-12 && !found; ++k) {
        for (int side : {+1, -1}) {
            const double offset = side * k * cfg.theta_a1;
            auto p = make_probe(offset);
            if (!p) continue;
            const auto oc = world.first_collision(integrate(s, *p));
            if (oc) {
                kappa_old = std::move(*p);
                o_old = *oc;
                last_o = *oc;
                continue;
            }
            free_probe = std::move(*p);
            free_offset = offset;
            side_found = side;
            k_found = k;
            found = true;
            break;
        }
    }
    if (!found) {
        out.sweep_exhausted = true;
        return out;
    }

    // Fine phase: back off one coarse step on the free side and re-advance
    // by theta_a2 until free again; falls back to the coarse free probe.
    const double base = side_found * (k_found - 1) * cfg.theta_a1;
    CurvatureProfile chosen = free_probe;
    double chosen_offset = free_offset;
    for (int j = 1; static_cast<double>(j) * cfg.theta_a2 < cfg.theta_a1 - 1e-12; ++j) {
        const double offset = base + side_found * j * cfg.theta_a2;
        auto p = make_probe(offset);
        if (!p) continue;
        const auto oc = world.first_collision(integrate(s, *p));
        if (oc) {
            kappa_old = std::move(*p);
            o_old = *oc;
            last_o = *oc;
            continue;
        }
        chosen = std::move(*p);
        chosen_offset = offset;
        break;
    }

    out.free_probe = chosen;
    out.chosen_offset = chosen_offset;
    out.kappa_a = p_fimin(world, s, chosen, kappa_old, o_old, cfg);
    return out;
}

namespace detail {

std::size_t branch_index(const CurvatureProfile& profile, std::size_t collision_idx,
                         const PlannerConfig& cfg) {
    const std::size_t back = static_cast<std::size_t>(std::llround(cfg.back_obs / cfg.dt));
    const std::size_t b = collision_idx > back ? collision_idx - back : 0;
    return std::min(b, profile.size());
}

CurvatureProfile trim_with_rampout(const WorldModel& world, const PlannerState& entry,
                                   const CurvatureProfile& probe, std::size_t cut,
                                   const PlannerConfig& cfg) {
    cut = std::min(cut, probe.size());
    const double rdt = cfg.rho * cfg.dt;
    while (true) {
        CurvatureProfile cand = prefix(probe, cut);
        if (cut > 0) {
            const auto tail = ramp_to_zero(cand.kappas.back(), rdt);
            cand.kappas.insert(cand.kappas.end(), tail.begin(), tail.end());
            if (cand.has_taus()) cand.taus.resize(cand.kappas.size(), 0.0);
        }
        if (cand.empty()) return cand;
        if (!world.first_collision(integrate(entry, cand))) return cand;
        if (cut == 0) return prefix(probe, 0);
        --cut;
    }
}

PlanResult plan_engine(const WorldModel& world, const PlannerState& start, const Point25& goal,
                       const PlannerConfig& cfg, const CrossHook* cross) {
    if (cfg.dt <= 0.0 || cfg.rho <= 0.0 || cfg.theta_a1 <= 0.0 || cfg.theta_a2 <= 0.0 ||
        cfg.l_add <= 0.0 || cfg.back_obs <= 0.0 || cfg.max_nodes == 0)
        throw std::invalid_argument("plan: planner parameters must be positive");
    if (cfg.theta_a2 >= cfg.theta_a1)
        throw std::invalid_argument("plan: theta_a2 must be strictly below theta_a1");

    PlannerState s0 = start;
    s0.theta = wrap_pi(start.theta);
    if (world.occupied_at(s0.position()))
        throw std::invalid_argument("plan: start position is occupied");
    if (world.occupied_at(goal)) throw std::invalid_argument("plan: goal position is occupied");

    PathTree tree(s0, goal);
    std::vector<Point25> expanded;
    PlanResult res;

    const auto finalize = [&](PlanResult::Status st) {
        res.status = st;
        res.tree_stats = tree.stats();
        res.tree_json = tree.dump_json();
        if (st != PlanResult::Status::success) {
            res.profile = CurvatureProfile{};
            res.profile.dt = cfg.dt;
            res.waypoints = integrate(s0, res.profile);
        }
    };

    const auto finish_success = [&](const std::string& loc, const CurvatureProfile& kd) {
        res.profile = concat(tree.reconstruct(loc), kd);
        res.waypoints = integrate(s0, res.profile);
        finalize(PlanResult::Status::success);
    };

    const auto vacant_side = [&](const std::string& loc, char preferred) -> char {
        const PathTree::Node& n = tree.at(loc);
        const bool l_free = !n.left;
        const bool r_free = !n.right;
        if (preferred == 'L' && l_free) return 'L';
        if (preferred == 'R' && r_free) return 'R';
        if (l_free) return 'L';
        if (r_free) return 'R';
        return 0;
    };

    // Direct attempt from a node; commits crossings when available, inserts
    // a branch node on collision. Returns true when the goal was reached.
    const auto direct_attempt = [&](std::string loc) -> bool {
        while (true) {
            const PlannerState s = tree.at(loc).exit_state;
            CurvatureProfile kd;
            bool salvaged = false;
            try {
                kd = direct_plan(world, s, goal, cfg);
            } catch (const DegenerateSpiral& e) {
                kd = e.partial;  // keep the geometry; the collision check and
                salvaged = true; // branch insertion below still apply
            }
            const Waypoints wp = integrate(s, kd);
            const auto c = world.first_collision(wp);
            if (!c) {
                if (!salvaged &&
                    planar_distance(wp.back().position(), goal) <= cfg.goal_tolerance()) {
                    finish_success(loc, kd);
                    return true;
                }
                return false;  // free but never reaches; nothing to branch on
            }
            if (cross && tree.node_count() + 2 <= cfg.max_nodes) {
                const auto crossed = cross->try_cross(tree, loc, kd, wp, *c);
                if (crossed) {
                    loc = *crossed;
                    continue;
                }
            }
            const std::size_t b = branch_index(kd, *c, cfg);
            if (b > 0 && tree.node_count() < cfg.max_nodes) {
                // The retreat can land mid-turn; the ramp-out closes the
                // curvature back to zero so the branch splices G2-clean.
                const CurvatureProfile seg = trim_with_rampout(world, s, kd, b, cfg);
                if (!seg.empty()) {
                    const char side = vacant_side(loc, heading_sum(seg) >= 0.0 ? 'L' : 'R');
                    if (side) tree.insert(loc, side, seg);
                }
            }
            return false;
        }
    };

    if (direct_attempt("")) return res;

    while (true) {
        if (tree.node_count() >= cfg.max_nodes) {
            finalize(PlanResult::Status::budget);
            return res;
        }
        if (tree.index_empty()) {
            finalize(PlanResult::Status::exhausted);
            return res;
        }
        const auto [loc, key] = tree.pop_min();
        const PlannerState s = tree.at(loc).exit_state;

        bool coincident = false;
        for (const auto& p : expanded) {
            if (planar_distance(s.position(), p) <= cfg.dt) {
                coincident = true;
                break;
            }
        }
        expanded.push_back(s.position());

        const ExploreResult er = explore_plan(world, s, goal, cfg);
        if (er.sweep_exhausted) {
            tree.mark_closed(loc);
            continue;
        }

        CurvatureProfile seg = er.kappa_a;
        if (coincident || seg.empty()) {
            // Pseudo-feasible mitigation: commit a short fixed piece of the
            // free probe so planning advances past the stalled position.
            const std::size_t steps =
                std::min(er.free_probe.size(),
                         static_cast<std::size_t>(std::llround(cfg.l_add / 2.0 / cfg.dt)));
            seg = trim_with_rampout(world, s, er.free_probe, steps, cfg);
        }
        if (seg.empty()) {
            tree.mark_closed(loc);
            continue;
        }
        if (tree.node_count() >= cfg.max_nodes) {
            finalize(PlanResult::Status::budget);
            return res;
        }
        const char side = vacant_side(loc, er.chosen_offset >= 0.0 ? 'L' : 'R');
        if (!side) continue;
        const std::string child = tree.insert(loc, side, seg);
        if (direct_attempt(child)) return res;
    }
}

}  // namespace detail

PlanResult plan(const WorldModel& world, const PlannerState& start, const Point25& goal,
                const PlannerConfig& cfg) {
    return detail::plan_engine(world, start, goal, cfg, nullptr);
}

}  // namespace fdspc
