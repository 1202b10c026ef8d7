#include "fdspc/velocity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fdspc {

namespace {
constexpr double kZeroKappa = 1e-9;
}

std::vector<double> plan_velocity(const CurvatureProfile& profile, const VelocityConfig& cfg) {
    if (profile.empty()) throw std::invalid_argument("plan_velocity: empty profile");
    if (cfg.accel <= 0.0 || cfg.v_min < 0.0 || cfg.v_max <= cfg.v_min)
        throw std::invalid_argument("plan_velocity: need accel > 0 and 0 <= v_min < v_max");

    const std::size_t n = profile.size();
    const double dt = profile.dt;
    const double dv = cfg.accel * dt;
    const std::size_t look = cfg.lookahead_steps(dt);

    const auto curved = [&](std::size_t i) {
        return std::abs(profile.kappa_at(i)) > kZeroKappa ||
               std::abs(profile.tau_at(i)) > kZeroKappa;
    };
    // A step is treated as curved when any step within the lookahead window
    // ahead of it is curved, so deceleration starts early enough.
    std::vector<char> eff(n, 0);
    std::size_t next_curved = n;  // index of the nearest curved step at or after i
    for (std::size_t i = n; i-- > 0;) {
        if (curved(i)) next_curved = i;
        eff[i] = next_curved != n && next_curved - i <= look;
    }

    std::vector<double> v(n + 1, 0.0);
    v[0] = std::clamp(cfg.v_start, 0.0, cfg.v_max);
    for (std::size_t i = 1; i <= n; ++i) {
        const double prev = v[i - 1];
        if (prev < cfg.v_min) {
            // Startup ramp ("beginning part"): climb into the working band.
            v[i] = std::min(cfg.v_max, prev + dv);
        } else if (!eff[i - 1] && prev < cfg.v_max) {
            v[i] = std::min(cfg.v_max, prev + dv);
        } else if (eff[i - 1] && prev > cfg.v_min) {
            v[i] = std::max(cfg.v_min, prev - dv);
        } else {
            v[i] = prev;
        }
    }

    // Backward limiting pass lands the end ramp on v_end without exceeding
    // the rate bound.
    v[n] = std::min(v[n], std::clamp(cfg.v_end, 0.0, cfg.v_max));
    for (std::size_t i = n; i-- > 0;) v[i] = std::min(v[i], v[i + 1] + dv);
    return v;
}

Trajectory make_trajectory(const PlannerState& start, const CurvatureProfile& profile,
                           const VelocityConfig& cfg) {
    Trajectory t;
    t.waypoints = integrate(start, profile);
    if (profile.empty())
        t.velocities.assign(1, std::clamp(cfg.v_start, 0.0, cfg.v_max));
    else
        t.velocities = plan_velocity(profile, cfg);
    return t;
}

}  // namespace fdspc
