#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fdspc/geometry.hpp"

namespace fdspc {

/// Pose-with-curvature state advanced by the integrator.
/// theta is kept in (-pi, pi]; kappa/tau_z are the curvature and z-slope
/// currently in effect (last applied step).
struct PlannerState {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double theta = 0.0;   // heading, radians
    double kappa = 0.0;   // 1/m
    double tau_z = 0.0;   // dz per unit planar arc length

    Point25 position() const { return {x, y, z}; }
    bool finite() const;
};

/// Per-step curvature sequence, the planner's native path representation.
/// One kappa per integration step of arc length dt (ds/dt = 1). taus, when
/// non-empty, must have the same length; empty means level ground.
/// rho / rho_z record the rate bounds the profile was built under, so the
/// discrete G2 invariant |d kappa| <= rho*dt can be re-checked downstream.
struct CurvatureProfile {
    double dt = 0.01;
    std::vector<double> kappas;
    std::vector<double> taus;
    double rho = 0.0;
    double rho_z = 0.0;

    std::size_t size() const { return kappas.size(); }
    bool empty() const { return kappas.empty(); }
    double length() const { return static_cast<double>(kappas.size()) * dt; }
    bool has_taus() const { return !taus.empty(); }
    double kappa_at(std::size_t i) const { return kappas[i]; }
    double tau_at(std::size_t i) const { return taus.empty() ? 0.0 : taus[i]; }
};

/// Integrated states, one per waypoint (profile of n steps -> n+1 states),
/// with cumulative arc length.
struct Waypoints {
    std::vector<PlannerState> states;
    std::vector<double> arc_length;

    std::size_t size() const { return states.size(); }
    const PlannerState& back() const { return states.back(); }
    std::vector<Point25> points() const;
};

/// Thrown by inverse_integrate when the requested heading change cannot be
/// reached within the given length; carries the reachable maximum.
struct InfeasibleTurn : std::runtime_error {
    InfeasibleTurn(double requested_, double reachable_);
    double requested;
    double reachable;
};

/// Forward-Euler rollout of a curvature profile:
///   theta' = theta + kappa*dt, x' = x + cos(theta)*dt, y' = y + sin(theta)*dt,
///   z' = z + tau_z*dt.
/// Returns n+1 states including the start. Throws on non-finite start.
Waypoints integrate(const PlannerState& start, const CurvatureProfile& profile);

/// Heading change of a full triangular curvature ramp over l_int: rho*(l_int/2)^2.
double max_heading_change(double rho, double l_int);

/// Build a curvature profile of ceil(l_int/dt) steps realizing net heading
/// change theta_t: a symmetric triangular ramp (0 -> peak -> 0 at rate rho),
/// uniformly scaled so the heading integral lands on theta_t, padded with
/// zeros. Degrades to a trapezoid when kappa_max caps the peak.
/// Throws InfeasibleTurn when |theta_t| exceeds the reachable maximum.
CurvatureProfile inverse_integrate(double theta_t, double rho, double l_int, double dt,
                                   double kappa_max = std::numeric_limits<double>::infinity());

/// Concatenate two profiles with matching dt. taus materialize as zeros when
/// only one side carries them; rate-bound metadata takes the max.
CurvatureProfile concat(const CurvatureProfile& a, const CurvatureProfile& b);

/// First `steps` steps of a profile.
CurvatureProfile prefix(const CurvatureProfile& p, std::size_t steps);

/// Values ramping `from` to exactly 0 with per-step change <= rate_per_step.
std::vector<double> ramp_to_zero(double from, double rate_per_step);

/// Largest per-step |kappa[i+1]-kappa[i]| including the entry jump from 0.
double max_kappa_step(const CurvatureProfile& p);
double max_tau_step(const CurvatureProfile& p);

}  // namespace fdspc
