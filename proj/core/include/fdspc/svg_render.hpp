#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fdspc/geometry.hpp"
#include "fdspc/world_model.hpp"

namespace fdspc {

struct SvgOptions {
    double pixels_per_meter = 40.0;
    bool draw_inflation = true;
};

/// Map + optional path render: occupancy dark, inflation halo lighter,
/// start/goal markers, path polyline.
std::string render_map_svg(const WorldModel& world, const std::vector<Point25>& path,
                           const Point25& start, const Point25& goal,
                           const SvgOptions& opts = {});

/// Exploration-tree render on top of the map: open nodes blue, closed nodes
/// red, final path polyline. tree_json is the PathTree dump.
std::string render_tree_svg(const WorldModel& world, const std::string& tree_json,
                            const std::vector<Point25>& path, const Point25& start,
                            const Point25& goal, const SvgOptions& opts = {});

}  // namespace fdspc
