#include "fdspc/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>

namespace fdspc {

namespace {

constexpr int kDx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
constexpr int kDy[8] = {0, 0, 1, -1, 1, -1, 1, -1};

struct QueueEntry {
    double priority;
    std::uint64_t order;
    int idx;
    bool operator>(const QueueEntry& o) const {
        if (priority != o.priority) return priority > o.priority;
        return order > o.order;  // FIFO on ties
    }
};

}  // namespace

std::optional<GridPath> grid_search(const WorldModel& world, GridCell start, GridCell goal,
                                    GridSearchKind kind) {
    const int W = world.width(), H = world.height();
    const auto id = [W](int x, int y) { return y * W + x; };
    const auto free_cell = [&](int x, int y) {
        return world.in_bounds(x, y) && !world.occupied_cell(x, y);
    };
    if (!free_cell(start.x, start.y) || !free_cell(goal.x, goal.y)) return std::nullopt;

    const double res = world.resolution();
    const auto heuristic = [&](int x, int y) {
        return std::hypot((x - goal.x) * res, (y - goal.y) * res);
    };

    const int n = W * H;
    std::vector<double> g(n, std::numeric_limits<double>::infinity());
    std::vector<int> parent(n, -1);
    std::vector<char> closed(n, 0);
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<QueueEntry>> open;
    std::uint64_t order = 0;

    const int s = id(start.x, start.y);
    g[s] = 0.0;
    open.push({kind == GridSearchKind::dijkstra ? 0.0 : heuristic(start.x, start.y), order++, s});

    while (!open.empty()) {
        const auto [prio, ord, cur] = open.top();
        open.pop();
        if (closed[cur]) continue;
        closed[cur] = 1;
        const int cx = cur % W, cy = cur / W;
        if (cx == goal.x && cy == goal.y) break;

        for (int d = 0; d < 8; ++d) {
            const int nx = cx + kDx[d], ny = cy + kDy[d];
            if (!free_cell(nx, ny)) continue;
            if (d >= 4 && world.occupied_cell(cx + kDx[d], cy) &&
                world.occupied_cell(cx, cy + kDy[d]))
                continue;  // both corner cells blocked
            const int ni = id(nx, ny);
            if (closed[ni]) continue;
            const double step = d < 4 ? res : res * std::sqrt(2.0);
            const double ng = g[cur] + step;
            if (ng < g[ni] - 1e-15) {
                g[ni] = ng;
                parent[ni] = cur;
                double prio_n = 0.0;
                switch (kind) {
                    case GridSearchKind::astar: prio_n = ng + heuristic(nx, ny); break;
                    case GridSearchKind::dijkstra: prio_n = ng; break;
                    case GridSearchKind::gbfs: prio_n = heuristic(nx, ny); break;
                }
                open.push({prio_n, order++, ni});
            }
        }
    }

    const int gi = id(goal.x, goal.y);
    if (!closed[gi] && parent[gi] < 0 && gi != s) return std::nullopt;

    GridPath path;
    path.cost = g[gi];
    std::vector<int> chain;
    for (int c = gi; c >= 0; c = parent[c]) {
        chain.push_back(c);
        if (c == s) break;
    }
    if (chain.back() != s) return std::nullopt;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        const int x = *it % W, y = *it / W;
        path.points.push_back({(x + 0.5) * res, (y + 0.5) * res, 0.0});
    }
    return path;
}

namespace {

// Uniform double in [0, 1) from raw generator bits; avoids the
// implementation-defined std::uniform_real_distribution.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Grid traversal over every cell the segment touches; corner crossings
// conservatively check both adjacent cells, so no point sampling of the
// segment can disagree.
bool segment_blocked(const WorldModel& world, const Point25& a, const Point25& b) {
    int x = world.cell_x(a.x), y = world.cell_y(a.y);
    const int xe = world.cell_x(b.x), ye = world.cell_y(b.y);
    if (world.occupied_cell(x, y) || world.occupied_cell(xe, ye)) return true;
    const double dx = b.x - a.x, dy = b.y - a.y;
    const int sx = dx > 0 ? 1 : -1, sy = dy > 0 ? 1 : -1;
    const double res = world.resolution();
    const double inf = std::numeric_limits<double>::infinity();
    double tmx = dx != 0 ? ((x + (sx > 0 ? 1 : 0)) * res - a.x) / dx : inf;
    double tmy = dy != 0 ? ((y + (sy > 0 ? 1 : 0)) * res - a.y) / dy : inf;
    const double tdx = dx != 0 ? res / std::abs(dx) : inf;
    const double tdy = dy != 0 ? res / std::abs(dy) : inf;
    int guard = 4 * (world.width() + world.height());
    while ((x != xe || y != ye) && guard-- > 0) {
        if (std::abs(tmx - tmy) < 1e-12) {
            if (world.occupied_cell(x + sx, y) || world.occupied_cell(x, y + sy)) return true;
            x += sx;
            y += sy;
            tmx += tdx;
            tmy += tdy;
        } else if (tmx < tmy) {
            x += sx;
            tmx += tdx;
        } else {
            y += sy;
            tmy += tdy;
        }
        if (world.occupied_cell(x, y)) return true;
    }
    return guard <= 0;
}

}  // namespace

std::optional<std::vector<Point25>> rrt(const WorldModel& world, const Point25& start,
                                        const Point25& goal, std::uint64_t seed,
                                        const RrtParams& params) {
    if (world.occupied_at(start) || world.occupied_at(goal)) return std::nullopt;
    const double step = params.step > 0.0 ? params.step : 5.0 * world.resolution();
    const double goal_radius = params.goal_radius > 0.0 ? params.goal_radius : step;

    std::mt19937_64 rng(seed);
    std::vector<Point25> nodes{start};
    std::vector<int> parent{-1};

    // Bucketed nearest-neighbour: cell size = step, expanding ring scan,
    // ties broken by lowest node index.
    const double bucket = std::max(step, 1e-6);
    const int bw = std::max(1, static_cast<int>(std::ceil(world.width_m() / bucket)));
    const int bh = std::max(1, static_cast<int>(std::ceil(world.height_m() / bucket)));
    std::vector<std::vector<int>> buckets(static_cast<std::size_t>(bw) * bh);
    const auto bucket_of = [&](const Point25& p) {
        const int bx = std::clamp(static_cast<int>(p.x / bucket), 0, bw - 1);
        const int by = std::clamp(static_cast<int>(p.y / bucket), 0, bh - 1);
        return std::pair<int, int>{bx, by};
    };
    const auto push_node = [&](const Point25& p, int par) {
        nodes.push_back(p);
        parent.push_back(par);
        const auto [bx, by] = bucket_of(p);
        buckets[static_cast<std::size_t>(by) * bw + bx].push_back(
            static_cast<int>(nodes.size()) - 1);
        return static_cast<int>(nodes.size()) - 1;
    };
    {
        const auto [bx, by] = bucket_of(start);
        buckets[static_cast<std::size_t>(by) * bw + bx].push_back(0);
    }
    const auto nearest = [&](const Point25& q) {
        const auto [qx, qy] = bucket_of(q);
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (int ring = 0; ring <= bw + bh; ++ring) {
            for (int by = qy - ring; by <= qy + ring; ++by) {
                if (by < 0 || by >= bh) continue;
                for (int bx = qx - ring; bx <= qx + ring; ++bx) {
                    if (bx < 0 || bx >= bw) continue;
                    if (std::max(std::abs(bx - qx), std::abs(by - qy)) != ring) continue;
                    for (int i : buckets[static_cast<std::size_t>(by) * bw + bx]) {
                        const double d = planar_distance(nodes[i], q);
                        if (d < best_d) {
                            best_d = d;
                            best = i;
                        }
                    }
                }
            }
            // One extra ring after the first hit covers diagonal neighbours.
            if (best >= 0 && best_d <= static_cast<double>(ring) * bucket) break;
        }
        return best;
    };

    for (std::size_t it = 0; it < params.max_iterations; ++it) {
        Point25 sample;
        if (uniform01(rng) < params.goal_bias) {
            sample = goal;
        } else {
            sample = {uniform01(rng) * world.width_m(), uniform01(rng) * world.height_m(), 0.0};
        }
        const int near = nearest(sample);
        const Point25& from = nodes[near];
        const double d = planar_distance(from, sample);
        if (d < 1e-9) continue;
        const double scale = std::min(1.0, step / d);
        const Point25 to{from.x + (sample.x - from.x) * scale,
                         from.y + (sample.y - from.y) * scale, 0.0};
        if (world.occupied_at(to) || segment_blocked(world, from, to)) continue;
        const int ni = push_node(to, near);
        if (planar_distance(to, goal) <= goal_radius && !segment_blocked(world, to, goal)) {
            std::vector<Point25> path{goal};
            for (int c = ni; c >= 0; c = parent[c]) path.push_back(nodes[c]);
            std::reverse(path.begin(), path.end());
            return path;
        }
    }
    return std::nullopt;
}

}  // namespace fdspc
