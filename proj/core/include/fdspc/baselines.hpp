#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fdspc/geometry.hpp"
#include "fdspc/world_model.hpp"

namespace fdspc {

struct GridCell {
    int x = 0;
    int y = 0;
};

/// 8-connected grid path of cell-center points with its metric cost.
struct GridPath {
    std::vector<Point25> points;
    double cost = 0.0;
};

enum class GridSearchKind { astar, dijkstra, gbfs };

/// Grid search over free cells with Euclidean edge costs. Diagonal moves are
/// forbidden only when both adjacent orthogonal cells are occupied. A* and
/// Dijkstra return cost-optimal paths; GBFS expands by heuristic alone.
std::optional<GridPath> grid_search(const WorldModel& world, GridCell start, GridCell goal,
                                    GridSearchKind kind);

inline std::optional<GridPath> astar(const WorldModel& w, GridCell s, GridCell g) {
    return grid_search(w, s, g, GridSearchKind::astar);
}
inline std::optional<GridPath> dijkstra(const WorldModel& w, GridCell s, GridCell g) {
    return grid_search(w, s, g, GridSearchKind::dijkstra);
}
inline std::optional<GridPath> gbfs(const WorldModel& w, GridCell s, GridCell g) {
    return grid_search(w, s, g, GridSearchKind::gbfs);
}

struct RrtParams {
    double step = 0.0;          // 0 -> 5 * resolution
    double goal_bias = 0.05;
    std::size_t max_iterations = 20000;
    double goal_radius = 0.0;   // 0 -> step
};

/// Standard RRT with a fixed extension step, goal bias, and hand-rolled
/// uniform sampling from a seeded mt19937_64 so runs are bit-reproducible.
std::optional<std::vector<Point25>> rrt(const WorldModel& world, const Point25& start,
                                        const Point25& goal, std::uint64_t seed,
                                        const RrtParams& params = {});

}  // namespace fdspc
