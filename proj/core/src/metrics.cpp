#include "fdspc/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fdspc {

namespace {

constexpr double kRadToDeg = 180.0 / 3.14159265358979323846;
constexpr double kAngleEps = 1e-12;  // rad; separates turning vertices from noise

struct Vec3 {
    double x, y, z;
};

Vec3 diff(const Point25& a, const Point25& b) { return {b.x - a.x, b.y - a.y, b.z - a.z}; }

double norm(const Vec3& v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }

// Turning angle between consecutive segment vectors in [0, pi]. The
// atan2(|cross|, dot) form returns an exact 0 for bitwise-equal vectors, so
// dense straight runs never register as turning vertices.
double turn_angle(const Vec3& u, const Vec3& v) {
    if (norm(u) == 0.0 || norm(v) == 0.0) return 0.0;
    const Vec3 c{u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
    const double dot = u.x * v.x + u.y * v.y + u.z * v.z;
    return std::atan2(norm(c), dot);
}

struct Stats {
    double mean = 0.0;
    double stddev = 0.0;
};

Stats stats_of(const std::vector<double>& xs) {
    Stats s;
    if (xs.empty()) return s;
    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean = sum / static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - s.mean) * (x - s.mean);
    s.stddev = xs.size() > 1 ? std::sqrt(var / static_cast<double>(xs.size() - 1)) : 0.0;
    return s;
}

}  // namespace

double path_length(std::span<const Point25> points) {
    if (points.size() < 2) throw std::invalid_argument("path_length: need at least 2 points");
    double total = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) total += distance(points[i - 1], points[i]);
    return total;
}

Smoothness smoothness(std::span<const Point25> points) {
    if (points.size() < 3) throw std::invalid_argument("smoothness: need at least 3 points");
    const double lp = path_length(points);
    double sum = 0.0;
    std::size_t lc = 0;
    for (std::size_t i = 1; i + 1 < points.size(); ++i) {
        const double a = turn_angle(diff(points[i - 1], points[i]), diff(points[i], points[i + 1]));
        sum += a;
        if (a > kAngleEps) ++lc;
    }
    Smoothness out;
    out.s1_deg_per_m = lp > 0.0 ? (sum / lp) * kRadToDeg : 0.0;
    out.s2_deg = lc > 0 ? (sum / static_cast<double>(lc)) * kRadToDeg : 0.0;
    return out;
}

double peak_rss_mb() {
    std::ifstream in("/proc/self/status");
    if (!in) return 0.0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("VmHWM:", 0) == 0) {
            long kb = 0;
            std::sscanf(line.c_str(), "VmHWM: %ld", &kb);
            return static_cast<double>(kb) / 1024.0;
        }
    }
    return 0.0;
}

PathReport instrumented_run(const std::string& planner_name, const PlannerFn& fn,
                            bool stochastic, int repetitions, std::uint64_t seed) {
    PathReport rep;
    rep.planner = planner_name;
    const int runs = stochastic ? std::max(1, repetitions) : 1;
    rep.runs = runs;

    std::vector<double> times, lengths, s1s, s2s;
    const double mem_before = peak_rss_mb();
    for (int r = 0; r < runs; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        std::optional<std::vector<Point25>> path;
        try {
            path = fn(seed + static_cast<std::uint64_t>(r));
        } catch (const std::exception&) {
            path = std::nullopt;
        }
        const auto t1 = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double>(t1 - t0).count());
        if (!path || path->size() < 2) continue;
        ++rep.successes;
        lengths.push_back(path_length(*path));
        if (path->size() >= 3) {
            const Smoothness s = smoothness(*path);
            s1s.push_back(s.s1_deg_per_m);
            s2s.push_back(s.s2_deg);
        } else {
            s1s.push_back(0.0);
            s2s.push_back(0.0);
        }
        rep.n_points = path->size();
    }
    rep.memory_mb = std::max(0.0, peak_rss_mb() - mem_before);
    rep.success = rep.successes > 0;

    const Stats ts = stats_of(times), ls = stats_of(lengths), s1 = stats_of(s1s),
                s2 = stats_of(s2s);
    rep.time_s = ts.mean;
    rep.time_std = ts.stddev;
    rep.length_m = ls.mean;
    rep.length_std = ls.stddev;
    rep.s1_deg_per_m = s1.mean;
    rep.s1_std = s1.stddev;
    rep.s2_deg = s2.mean;
    rep.s2_std = s2.stddev;
    return rep;
}

std::string reports_to_json(std::span<const PathReport> reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        arr.push_back({{"planner", r.planner},
                       {"scenario", r.scenario},
                       {"success", r.success},
                       {"runs", r.runs},
                       {"successes", r.successes},
                       {"time_s", r.time_s},
                       {"time_std", r.time_std},
                       {"memory_mb", r.memory_mb},
                       {"length_m", r.length_m},
                       {"length_std", r.length_std},
                       {"s1_deg_per_m", r.s1_deg_per_m},
                       {"s1_std", r.s1_std},
                       {"s2_deg", r.s2_deg},
                       {"s2_std", r.s2_std},
                       {"n_points", r.n_points}});
    }
    return nlohmann::json{{"reports", std::move(arr)}}.dump(2);
}

std::string reports_to_csv(std::span<const PathReport> reports) {
    std::ostringstream out;
    out << "planner,scenario,success,runs,successes,time_s,time_std,memory_mb,"
           "length_m,length_std,s1_deg_per_m,s1_std,s2_deg,s2_std,n_points\n";
    char buf[512];
    for (const auto& r : reports) {
        std::snprintf(buf, sizeof(buf),
                      "%s,%s,%d,%d,%d,%.6f,%.6f,%.3f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%zu\n",
                      r.planner.c_str(), r.scenario.c_str(), r.success ? 1 : 0, r.runs,
                      r.successes, r.time_s, r.time_std, r.memory_mb, r.length_m, r.length_std,
                      r.s1_deg_per_m, r.s1_std, r.s2_deg, r.s2_std, r.n_points);
        out << buf;
    }
    return out.str();
}

}  // namespace fdspc
