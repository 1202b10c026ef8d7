#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fdspc/curvature.hpp"
#include "fdspc/geometry.hpp"

namespace fdspc {

/// Scenario/map parse failure with a 1-based source position when known.
struct ParseError : std::runtime_error {
    ParseError(std::string msg, int line_ = 0, int column_ = 0)
        : std::runtime_error(std::move(msg)), line(line_), column(column_) {}
    int line;
    int column;
};

struct PolygonObstacle {
    std::vector<std::array<double, 2>> polygon;  // world coordinates, >= 3 vertices
    double height = std::numeric_limits<double>::infinity();
};

/// Axis-aligned elevation ramp: terrain rises linearly from z0 to z1 across
/// rect [x0,y0,x1,y1] along the given axis.
struct RampSpec {
    std::array<double, 4> rect{};
    double z0 = 0.0;
    double z1 = 0.0;
    char axis = 'x';
};

struct MapSpec {
    double resolution = 0.1;
    double width_m = 0.0;
    double height_m = 0.0;
    std::vector<PolygonObstacle> obstacles;
    std::vector<RampSpec> ramps;
};

/// 2.5-D world: occupancy grid + elevation field + inflation state.
/// Immutable after construction/inflation; cell (0,0) has its center at
/// (0.5*res, 0.5*res) in world coordinates. Points outside the map count as
/// occupied (maps are walled).
class WorldModel {
public:
    static WorldModel from_spec(const MapSpec& spec);

    int width() const { return width_; }
    int height() const { return height_; }
    double resolution() const { return resolution_; }
    double width_m() const { return width_ * resolution_; }
    double height_m() const { return height_ * resolution_; }
    bool inflated() const { return inflated_; }
    double inflation_radius() const { return inflation_radius_; }

    bool in_bounds(int ix, int iy) const {
        return ix >= 0 && iy >= 0 && ix < width_ && iy < height_;
    }
    bool occupied_cell(int ix, int iy) const {
        if (!in_bounds(ix, iy)) return true;
        return occ_[index(ix, iy)] != 0;
    }
    bool raw_occupied_cell(int ix, int iy) const {
        if (!in_bounds(ix, iy)) return true;
        return occ_raw_[index(ix, iy)] != 0;
    }
    /// Obstacle top for a cell: elevation + obstacle height (infinity for
    /// walls, -infinity for free cells so comparisons stay trivial).
    double cell_top(int ix, int iy) const;
    double cell_elevation(int ix, int iy) const {
        return in_bounds(ix, iy) ? elevation_[index(ix, iy)] : 0.0;
    }
    double cell_obstacle_height(int ix, int iy) const {
        return in_bounds(ix, iy) ? obstacle_height_[index(ix, iy)]
                                 : std::numeric_limits<double>::infinity();
    }

    int cell_x(double x) const { return static_cast<int>(std::floor(x / resolution_)); }
    int cell_y(double y) const { return static_cast<int>(std::floor(y / resolution_)); }

    /// True iff the point's cell is occupied and p.z is below the obstacle
    /// top there; out-of-bounds points are occupied.
    bool occupied_at(const Point25& p) const;

    /// Smallest index whose waypoint is occupied; nullopt if all free.
    /// Caller contract: samples spaced at most one cell apart.
    std::optional<std::size_t> first_collision(std::span<const Point25> pts) const;
    std::optional<std::size_t> first_collision(const Waypoints& wp) const;

    /// Bilinear interpolation of the elevation field; throws std::out_of_range
    /// outside map bounds.
    double elevation_at(double x, double y) const;

    /// Grow obstacles by r_exp = max(r_robot + 0.1, r_robot * 1.1). Inflation
    /// always reseeds from the pre-inflation occupancy, so it is idempotent
    /// for a fixed radius. Newly occupied cells inherit the nearest source
    /// cell's obstacle height.
    WorldModel inflate(double r_robot) const;

private:
    std::size_t index(int ix, int iy) const {
        return static_cast<std::size_t>(iy) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(ix);
    }

    double resolution_ = 0.1;
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> occ_raw_;
    std::vector<std::uint8_t> occ_;
    std::vector<double> elevation_;
    std::vector<double> obstacle_height_;
    bool inflated_ = false;
    double inflation_radius_ = 0.0;
};

inline WorldModel inflate(const WorldModel& w, double r_robot) { return w.inflate(r_robot); }

/// Full scenario document: map plus start pose, goal, and optional
/// parameter overrides (raw JSON text of the "params" object).
struct Scenario {
    MapSpec map;
    PlannerState start;
    Point25 goal;
    std::string params_json;  // "{}" when absent
};

/// Parse a scenario document (JSON text). Throws ParseError with line/column
/// on malformed input, zero/negative resolution, or polygons outside bounds.
Scenario parse_scenario(const std::string& text);

/// Map-only convenience: rasterize the scenario's world.
WorldModel load_scenario(const std::string& text);

std::string read_text_file(const std::string& path);

}  // namespace fdspc
