#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fdspc/geometry.hpp"

namespace fdspc {

/// Sum of consecutive Euclidean distances (3-D when z is set).
/// Throws std::invalid_argument with fewer than 2 points.
double path_length(std::span<const Point25> points);

struct Smoothness {
    double s1_deg_per_m = 0.0;  // total turning per unit length
    double s2_deg = 0.0;        // mean angle over turning vertices
};

/// Per-vertex turning angles over consecutive segment vectors; degenerate
/// segments contribute 0. S1 = sum/length, S2 = sum/count of nonzero angles
/// (0 when the path never turns). Throws with fewer than 3 points.
Smoothness smoothness(std::span<const Point25> points);

/// One row of a planner-comparison table.
struct PathReport {
    std::string planner;
    std::string scenario;
    bool success = false;
    int runs = 1;
    int successes = 0;
    double time_s = 0.0;
    double time_std = 0.0;
    double memory_mb = 0.0;
    double length_m = 0.0;
    double length_std = 0.0;
    double s1_deg_per_m = 0.0;
    double s1_std = 0.0;
    double s2_deg = 0.0;
    double s2_std = 0.0;
    std::size_t n_points = 0;
};

using PlannerFn = std::function<std::optional<std::vector<Point25>>(std::uint64_t seed)>;

inline constexpr int kDefaultStochasticRuns = 500;

/// Execute a planner callable, recording wall time and peak-resident-memory
/// delta. Stochastic planners repeat over consecutive seeds and report
/// mean/stddev of time, length, S1 and S2 across successful runs. A planner
/// that returns no path (or throws) records a failed run, never a crash.
PathReport instrumented_run(const std::string& planner_name, const PlannerFn& fn,
                            bool stochastic = false, int repetitions = 1,
                            std::uint64_t seed = 1);

/// Peak resident set size (VmHWM) in MB; 0 when unavailable.
double peak_rss_mb();

std::string reports_to_json(std::span<const PathReport> reports);
std::string reports_to_csv(std::span<const PathReport> reports);

}  // namespace fdspc
