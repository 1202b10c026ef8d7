#include <cmath>

#include "doctest.h"
#include "fdspc/planner.hpp"
#include "support/test_maps.hpp"

using namespace fdspc;

namespace {

constexpr double kPi = 3.14159265358979323846;

WorldModel open_world() { return WorldModel::from_spec(testmaps::empty_map(12.0, 12.0)); }

double heading_sum(const CurvatureProfile& p) {
    double s = 0.0;
    for (double k : p.kappas) s += k;
    return s * p.dt;
}

}  // namespace

TEST_CASE("direct plan on an aligned goal is a pure straight run") {
    const auto w = open_world();
    PlannerState s;
    s.x = 1.0;
    s.y = 6.0;
    const auto kd = direct_plan(w, s, {6.0, 6.0, 0.0}, {});
    CHECK(kd.size() == 500);
    for (double k : kd.kappas) CHECK(k == 0.0);
    const auto wp = integrate(s, kd);
    CHECK(wp.back().x == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("direct plan turns to a perpendicular goal") {
    const auto w = open_world();
    PlannerState s;
    s.x = 6.0;
    s.y = 1.0;
    PlannerConfig cfg;
    const auto kd = direct_plan(w, s, {6.0, 8.0, 0.0}, cfg);
    const auto wp = integrate(s, kd);
    CHECK(planar_distance(wp.back().position(), {6.0, 8.0, 0.0}) <= cfg.goal_tolerance());
    // The chase overshoots past pi/2 to cancel the drift accumulated while
    // turning, then settles on the live bearing.
    CHECK(heading_sum(kd) > kPi / 3.0);
    CHECK(heading_sum(kd) < kPi);
    CHECK(max_kappa_step(kd) <= cfg.rho * cfg.dt + 1e-12);
    CHECK(kd.kappas.back() == 0.0);
}

TEST_CASE("direct plan from the goal is empty") {
    const auto w = open_world();
    PlannerState s;
    s.x = 3.0;
    s.y = 3.0;
    CHECK(direct_plan(w, s, {3.005, 3.0, 0.0}, {}).empty());
}

TEST_CASE("degenerate pursuit orbit raises with partial geometry") {
    const auto w = open_world();
    PlannerState s;
    s.x = 6.0;
    s.y = 6.0;
    PlannerConfig cfg;
    cfg.kappa_max = 0.5;  // goal inside the minimum turning circle
    try {
        direct_plan(w, s, {6.0, 6.5, 0.0}, cfg);
        FAIL("expected DegenerateSpiral");
    } catch (const DegenerateSpiral& e) {
        CHECK(!e.partial.empty());
        CHECK(max_kappa_step(e.partial) <= cfg.rho * cfg.dt + 1e-12);
    }
}

TEST_CASE("explore turns toward the open side and stays collision-free") {
    auto m = testmaps::empty_map(12.0, 10.0);
    testmaps::add_box(m, 5.0, 0.0, 5.4, 8.0);  // wall with a gap at the top
    const auto w = WorldModel::from_spec(m);
    PlannerState s;
    s.x = 2.0;
    s.y = 5.0;
    const auto er = explore_plan(w, s, {9.0, 5.0, 0.0}, {});
    REQUIRE(!er.sweep_exhausted);
    CHECK(er.chosen_offset > 0.0);  // the free side is up, swept left-first
    REQUIRE(!er.kappa_a.empty());
    CHECK(!w.first_collision(integrate(s, er.kappa_a)));
    CHECK(heading_sum(er.kappa_a) > 0.0);
}

TEST_CASE("explore exhausts inside a tight pocket") {
    auto m = testmaps::empty_map(3.0, 3.0);
    testmaps::add_box(m, 1.0, 1.0, 2.0, 1.1);  // box ring around (1.5,1.5)
    testmaps::add_box(m, 1.0, 1.9, 2.0, 2.0);
    testmaps::add_box(m, 1.0, 1.0, 1.1, 2.0);
    testmaps::add_box(m, 1.9, 1.0, 2.0, 2.0);
    const auto w = WorldModel::from_spec(m);
    PlannerState s;
    s.x = 1.5;
    s.y = 1.5;
    const auto er = explore_plan(w, s, {2.8, 2.8, 0.0}, {});
    CHECK(er.sweep_exhausted);
}

TEST_CASE("explore is deterministic and prefers the left side on symmetric maps") {
    auto m = testmaps::empty_map(12.0, 12.0);
    testmaps::add_box(m, 5.0, 2.0, 5.4, 10.0);  // symmetric free space above and below
    const auto w = WorldModel::from_spec(m);
    PlannerState s;
    s.x = 2.0;
    s.y = 6.0;
    const auto a = explore_plan(w, s, {9.0, 6.0, 0.0}, {});
    const auto b = explore_plan(w, s, {9.0, 6.0, 0.0}, {});
    REQUIRE(!a.sweep_exhausted);
    CHECK(a.chosen_offset > 0.0);  // left first by the alternation order
    CHECK(a.kappa_a.kappas == b.kappa_a.kappas);
    CHECK(a.chosen_offset == b.chosen_offset);
}

TEST_CASE("p_fimin trims at the closest approach to the old collision") {
    auto m = testmaps::empty_map(12.0, 10.0);
    testmaps::add_box(m, 5.0, 0.0, 5.4, 6.5);
    const auto w = WorldModel::from_spec(m);
    PlannerState s;
    s.x = 2.0;
    s.y = 5.0;
    PlannerConfig cfg;

    CurvatureProfile old_probe;  // straight into the wall
    old_probe.dt = cfg.dt;
    old_probe.rho = cfg.rho;
    old_probe.kappas.assign(500, 0.0);
    const auto o_idx = w.first_collision(integrate(s, old_probe));
    REQUIRE(o_idx.has_value());

    const auto free_probe = inverse_integrate(0.9, cfg.rho, 6.0, cfg.dt);
    REQUIRE(!w.first_collision(integrate(s, free_probe)));

    const auto cut = p_fimin(w, s, free_probe, old_probe, *o_idx, cfg);
    REQUIRE(!cut.empty());
    CHECK(!w.first_collision(integrate(s, cut)));
    CHECK(std::abs(cut.kappas.back()) < 1e-12);

    // Brute-force argmin over the free probe's waypoints.
    const auto wf = integrate(s, free_probe);
    const auto wo = integrate(s, old_probe);
    const Point25 target = wo.states[*o_idx].position();
    std::size_t jstar = 0;
    double best = 1e18;
    for (std::size_t j = 0; j < wf.size(); ++j) {
        const double d = planar_distance(wf.states[j].position(), target);
        if (d < best) {
            best = d;
            jstar = j;
        }
    }
    // The returned profile covers the prefix up to the argmin plus a ramp-out.
    CHECK(cut.size() >= jstar);
    const auto wc = integrate(s, cut);
    CHECK(planar_distance(wc.states[std::min(jstar, wc.size() - 1)].position(),
                          wf.states[jstar].position()) < 1e-9);
}

TEST_CASE("p_fimin keeps the full profile when the argmin sits at its end") {
    const auto w = open_world();
    PlannerState s;
    s.x = 1.0;
    s.y = 6.0;
    PlannerConfig cfg;
    const auto probe = inverse_integrate(0.4, cfg.rho, 4.0, cfg.dt);
    const auto full = p_fimin(w, s, probe, probe, probe.size(), cfg);
    CHECK(full.size() == probe.size());
    CHECK_THROWS_AS(p_fimin(w, s, {}, probe, 0, cfg), std::invalid_argument);
}

TEST_CASE("p_fimin ramp-out adds only the curvature decay heading") {
    const auto w = open_world();
    PlannerState s;
    s.x = 2.0;
    s.y = 6.0;
    PlannerConfig cfg;
    // Rising ramp, cut mid-way: appended ramp turns kappa_cut^2/(2 rho) more.
    CurvatureProfile probe;
    probe.dt = cfg.dt;
    probe.rho = cfg.rho;
    for (int i = 1; i <= 100; ++i) probe.kappas.push_back(i * cfg.rho * cfg.dt);
    const auto wp = integrate(s, probe);
    const std::size_t cut_at = 75;
    const auto cut = p_fimin(w, s, probe, probe, cut_at, cfg);
    REQUIRE(cut.size() > cut_at);
    const double kappa_cut = probe.kappas[cut_at - 1];
    double ramp_heading = 0.0;
    for (std::size_t i = cut_at; i < cut.size(); ++i) ramp_heading += cut.kappas[i] * cfg.dt;
    CHECK(ramp_heading == doctest::Approx(kappa_cut * kappa_cut / (2.0 * cfg.rho)).epsilon(0.15));
    (void)wp;
}

TEST_CASE("plan on an empty map is a single direct profile") {
    const auto w = open_world();
    PlannerState s;
    s.x = 1.0;
    s.y = 6.0;
    const auto res = plan(w, s, {10.0, 6.0, 0.0}, {});
    REQUIRE(res.success());
    CHECK(res.tree_stats.created == 1);
    CHECK(res.tree_stats.popped == 0);
    CHECK(!w.first_collision(res.waypoints));
}

TEST_CASE("plan detours around a long wall smoothly") {
    auto m = testmaps::empty_map(16.0, 12.0);
    testmaps::add_box(m, 7.8, 2.0, 8.2, 10.0);
    const auto w = WorldModel::from_spec(m);
    PlannerState s;
    s.x = 2.0;
    s.y = 6.0;
    PlannerConfig cfg;
    const auto res = plan(w, s, {14.0, 6.0, 0.0}, cfg);
    REQUIRE(res.success());
    CHECK(!w.first_collision(res.waypoints));
    CHECK(max_kappa_step(res.profile) <= cfg.rho * cfg.dt + 1e-9);
    CHECK(planar_distance(res.waypoints.back().position(), {14.0, 6.0, 0.0}) <=
          cfg.goal_tolerance());
}

TEST_CASE("plan reports exhaustion from a sealed start") {
    auto m = testmaps::empty_map(3.0, 3.0);
    testmaps::add_box(m, 1.0, 1.0, 2.0, 1.1);
    testmaps::add_box(m, 1.0, 1.9, 2.0, 2.0);
    testmaps::add_box(m, 1.0, 1.0, 1.1, 2.0);
    testmaps::add_box(m, 1.9, 1.0, 2.0, 2.0);
    const auto w = WorldModel::from_spec(m);
    PlannerState s;
    s.x = 1.5;
    s.y = 1.5;
    const auto res = plan(w, s, {2.8, 2.8, 0.0}, {});
    CHECK(res.status == PlanResult::Status::exhausted);
    CHECK(res.profile.empty());
}

TEST_CASE("plan rejects occupied endpoints and honors the node budget") {
    auto m = testmaps::empty_map(6.0, 6.0);
    testmaps::add_box(m, 2.0, 2.0, 3.0, 3.0);
    const auto w = WorldModel::from_spec(m);
    PlannerState inside;
    inside.x = 2.5;
    inside.y = 2.5;
    CHECK_THROWS_AS(plan(w, inside, {5.0, 5.0, 0.0}, {}), std::invalid_argument);
    PlannerState s;
    s.x = 0.5;
    s.y = 2.5;
    CHECK_THROWS_AS(plan(w, s, {2.5, 2.5, 0.0}, {}), std::invalid_argument);

    PlannerConfig tight;
    tight.max_nodes = 2;
    const auto res = plan(w, s, {5.5, 2.5, 0.0}, tight);
    CHECK(res.status == PlanResult::Status::budget);
    CHECK(res.tree_stats.created <= 2);
}

TEST_CASE("plan is sound, G2 and deterministic on random solvable maps") {
    PlannerConfig cfg;
    int successes = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto rw = testmaps::random_world(seed);
        if (rw.world.occupied_at(rw.start.position()) || rw.world.occupied_at(rw.goal)) continue;
        if (!testmaps::grid_solvable(rw.world, rw.start, rw.goal)) continue;
        const auto res = plan(rw.world, rw.start, rw.goal, cfg);
        if (!res.success()) continue;
        ++successes;
        CHECK(!rw.world.first_collision(res.waypoints));
        CHECK(planar_distance(res.waypoints.back().position(), rw.goal) <= cfg.goal_tolerance());
        CHECK(max_kappa_step(res.profile) <= cfg.rho * cfg.dt + 1e-9);
        const auto again = plan(rw.world, rw.start, rw.goal, cfg);
        CHECK(again.profile.kappas == res.profile.kappas);
    }
    CHECK(successes >= 15);
}
