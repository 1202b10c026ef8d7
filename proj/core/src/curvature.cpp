#include "fdspc/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace fdspc {

namespace {

// Number of steps covering length l at step dt: ceil(l/dt), robust against
// l being an exact multiple of dt up to float rounding.
std::size_t steps_for_length(double l, double dt) {
    if (l <= 0.0) return 0;
    const double q = l / dt;
    const double r = std::round(q);
    if (std::abs(q - r) < 1e-9) return static_cast<std::size_t>(r);
    return static_cast<std::size_t>(std::ceil(q));
}

}  // namespace

bool PlannerState::finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z) &&
           std::isfinite(theta) && std::isfinite(kappa) && std::isfinite(tau_z);
}

std::vector<Point25> Waypoints::points() const {
    std::vector<Point25> out;
    out.reserve(states.size());
    for (const auto& s : states) out.push_back(s.position());
    return out;
}

namespace {
std::string infeasible_message(double requested, double reachable) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "heading change %.6f rad unreachable (max %.6f rad)",
                  requested, reachable);
    return buf;
}
}  // namespace

InfeasibleTurn::InfeasibleTurn(double requested_, double reachable_)
    : std::runtime_error(infeasible_message(requested_, reachable_)),
      requested(requested_),
      reachable(reachable_) {}

Waypoints integrate(const PlannerState& start, const CurvatureProfile& profile) {
    if (!start.finite()) throw std::invalid_argument("integrate: non-finite start state");
    const std::size_t n = profile.size();
    Waypoints wp;
    wp.states.reserve(n + 1);
    wp.arc_length.reserve(n + 1);

    PlannerState s = start;
    s.theta = wrap_pi(s.theta);
    wp.states.push_back(s);
    wp.arc_length.push_back(0.0);

    const double dt = profile.dt;
    for (std::size_t i = 0; i < n; ++i) {
        const double k = profile.kappa_at(i);
        const double t = profile.tau_at(i);
        PlannerState next = s;
        next.x = s.x + std::cos(s.theta) * dt;
        next.y = s.y + std::sin(s.theta) * dt;
        next.z = s.z + t * dt;
        next.theta = wrap_pi(s.theta + k * dt);
        next.kappa = k;
        next.tau_z = t;
        wp.states.push_back(next);
        wp.arc_length.push_back(static_cast<double>(i + 1) * dt);
        s = next;
    }
    return wp;
}

double max_heading_change(double rho, double l_int) {
    if (l_int <= 0.0) return 0.0;
    const double h = l_int / 2.0;
    return rho * h * h;
}

CurvatureProfile inverse_integrate(double theta_t, double rho, double l_int, double dt,
                                   double kappa_max) {
    if (rho <= 0.0 || l_int <= 0.0 || dt <= 0.0)
        throw std::invalid_argument("inverse_integrate: rho, l_int and dt must be positive");
    if (std::abs(theta_t) >= 3.14159265358979323846)
        throw std::invalid_argument("inverse_integrate: |theta_t| must be < pi");
    if (kappa_max < rho * dt)
        throw std::invalid_argument("inverse_integrate: kappa_max below one rate step");

    const std::size_t n = std::max<std::size_t>(1, steps_for_length(l_int, dt));
    CurvatureProfile out;
    out.dt = dt;
    out.rho = rho;

    const double target = std::abs(theta_t);
    if (target < 1e-15) {
        out.kappas.assign(n, 0.0);
        return out;
    }

    const double reachable = max_heading_change(rho, l_int);
    if (target > reachable + 1e-12) throw InfeasibleTurn(theta_t, reachable);

    const double unit = rho * dt * dt;  // heading contribution of a 1-step at rate kappa=rho*dt
    const double sign = theta_t < 0.0 ? -1.0 : 1.0;
    std::vector<double> shape;  // in units of rho*dt

    const double peak_unscaled = std::sqrt(rho * target);
    if (peak_unscaled <= kappa_max) {
        // Triangular ramp: [1..m, m-1..1] sums to m^2 units.
        std::size_t m = static_cast<std::size_t>(std::ceil(std::sqrt(target / unit) - 1e-12));
        m = std::max<std::size_t>(1, m);
        while (unit * static_cast<double>(m) * static_cast<double>(m) < target) ++m;
        if (2 * m - 1 > n) m = (n + 1) / 2;  // feasibility guarantees this still covers target
        const double sum = unit * static_cast<double>(m) * static_cast<double>(m);
        const double alpha = std::min(1.0, target / sum);
        shape.reserve(2 * m - 1);
        for (std::size_t j = 1; j <= m; ++j) shape.push_back(alpha * static_cast<double>(j));
        for (std::size_t j = m - 1; j >= 1; --j) shape.push_back(alpha * static_cast<double>(j));
    } else {
        // Trapezoid capped at kappa_max: rise m_r steps, plateau p steps, fall.
        const std::size_t m_r =
            std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(kappa_max / (rho * dt))));
        const double tri = unit * static_cast<double>(m_r) * static_cast<double>(m_r);
        const double per_plateau = static_cast<double>(m_r) * unit;
        std::size_t p = static_cast<std::size_t>(std::ceil((target - tri) / per_plateau - 1e-12));
        if (2 * m_r - 1 + p > n) {
            const std::size_t p_max = n > 2 * m_r - 1 ? n - (2 * m_r - 1) : 0;
            const double cap_reachable = tri + static_cast<double>(p_max) * per_plateau;
            if (target > cap_reachable + 1e-12) throw InfeasibleTurn(theta_t, cap_reachable);
            p = p_max;
        }
        const double sum = tri + static_cast<double>(p) * per_plateau;
        const double alpha = std::min(1.0, target / sum);
        shape.reserve(2 * m_r - 1 + p);
        for (std::size_t j = 1; j <= m_r; ++j) shape.push_back(alpha * static_cast<double>(j));
        for (std::size_t j = 0; j < p; ++j) shape.push_back(alpha * static_cast<double>(m_r));
        for (std::size_t j = m_r - 1; j >= 1; --j) shape.push_back(alpha * static_cast<double>(j));
    }

    out.kappas.assign(n, 0.0);
    for (std::size_t i = 0; i < shape.size() && i < n; ++i)
        out.kappas[i] = sign * shape[i] * rho * dt;
    return out;
}

CurvatureProfile concat(const CurvatureProfile& a, const CurvatureProfile& b) {
    if (a.empty()) {
        CurvatureProfile out = b;
        if (b.empty()) out.dt = a.dt;
        out.rho = std::max(a.rho, b.rho);
        out.rho_z = std::max(a.rho_z, b.rho_z);
        return out;
    }
    if (!b.empty() && std::abs(a.dt - b.dt) > 1e-12)
        throw std::invalid_argument("concat: mismatched dt");
    CurvatureProfile out;
    out.dt = a.dt;
    out.rho = std::max(a.rho, b.rho);
    out.rho_z = std::max(a.rho_z, b.rho_z);
    out.kappas = a.kappas;
    out.kappas.insert(out.kappas.end(), b.kappas.begin(), b.kappas.end());
    if (a.has_taus() || b.has_taus()) {
        out.taus.assign(a.size(), 0.0);
        if (a.has_taus()) out.taus = a.taus;
        if (b.has_taus())
            out.taus.insert(out.taus.end(), b.taus.begin(), b.taus.end());
        else
            out.taus.resize(out.kappas.size(), 0.0);
    }
    return out;
}

CurvatureProfile prefix(const CurvatureProfile& p, std::size_t steps) {
    CurvatureProfile out;
    out.dt = p.dt;
    out.rho = p.rho;
    out.rho_z = p.rho_z;
    steps = std::min(steps, p.size());
    out.kappas.assign(p.kappas.begin(), p.kappas.begin() + static_cast<std::ptrdiff_t>(steps));
    if (p.has_taus())
        out.taus.assign(p.taus.begin(), p.taus.begin() + static_cast<std::ptrdiff_t>(steps));
    return out;
}

std::vector<double> ramp_to_zero(double from, double rate_per_step) {
    std::vector<double> out;
    if (std::abs(from) < 1e-15 || rate_per_step <= 0.0) return out;
    const std::size_t r = static_cast<std::size_t>(std::ceil(std::abs(from) / rate_per_step - 1e-12));
    out.reserve(r);
    for (std::size_t j = 1; j <= r; ++j) {
        const double frac = 1.0 - static_cast<double>(j) / static_cast<double>(r);
        out.push_back(j == r ? 0.0 : from * frac);
    }
    return out;
}

double max_kappa_step(const CurvatureProfile& p) {
    double m = 0.0;
    double prev = 0.0;
    for (double k : p.kappas) {
        m = std::max(m, std::abs(k - prev));
        prev = k;
    }
    return m;
}

double max_tau_step(const CurvatureProfile& p) {
    if (!p.has_taus()) return 0.0;
    double m = 0.0;
    double prev = 0.0;
    for (double t : p.taus) {
        m = std::max(m, std::abs(t - prev));
        prev = t;
    }
    return m;
}

}  // namespace fdspc
