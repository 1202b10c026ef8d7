#include "fdspc/world_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fdspc {

namespace {

// Even-odd rule point-in-polygon test at a cell center.
bool point_in_polygon(double px, double py, const std::vector<std::array<double, 2>>& poly) {
    bool inside = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const double xi = poly[i][0], yi = poly[i][1];
        const double xj = poly[j][0], yj = poly[j][1];
        const bool crosses = (yi > py) != (yj > py);
        if (crosses && px < (xj - xi) * (py - yi) / (yj - yi) + xi) inside = !inside;
    }
    return inside;
}

std::pair<int, int> line_col_from_offset(const std::string& text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

double WorldModel::cell_top(int ix, int iy) const {
    if (!in_bounds(ix, iy)) return std::numeric_limits<double>::infinity();
    const std::size_t i = index(ix, iy);
    if (!occ_[i]) return -std::numeric_limits<double>::infinity();
    return elevation_[i] + obstacle_height_[i];
}

bool WorldModel::occupied_at(const Point25& p) const {
    const int ix = cell_x(p.x);
    const int iy = cell_y(p.y);
    if (!in_bounds(ix, iy)) return true;
    if (!occ_[index(ix, iy)]) return false;
    const double top = elevation_at(p.x, p.y) + obstacle_height_[index(ix, iy)];
    return p.z < top;
}

std::optional<std::size_t> WorldModel::first_collision(std::span<const Point25> pts) const {
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (occupied_at(pts[i])) return i;
    return std::nullopt;
}

std::optional<std::size_t> WorldModel::first_collision(const Waypoints& wp) const {
    for (std::size_t i = 0; i < wp.states.size(); ++i)
        if (occupied_at(wp.states[i].position())) return i;
    return std::nullopt;
}

double WorldModel::elevation_at(double x, double y) const {
    if (x < 0.0 || y < 0.0 || x > width_m() || y > height_m())
        throw std::out_of_range("elevation_at: point outside map bounds");
    // Sample grid sits at cell centers; clamp the interpolation cell at edges.
    double gx = x / resolution_ - 0.5;
    double gy = y / resolution_ - 0.5;
    int ix = static_cast<int>(std::floor(gx));
    int iy = static_cast<int>(std::floor(gy));
    ix = std::clamp(ix, 0, std::max(0, width_ - 2));
    iy = std::clamp(iy, 0, std::max(0, height_ - 2));
    const double tx = std::clamp(gx - ix, 0.0, 1.0);
    const double ty = std::clamp(gy - iy, 0.0, 1.0);
    const int ix1 = std::min(ix + 1, width_ - 1);
    const int iy1 = std::min(iy + 1, height_ - 1);
    const double v00 = elevation_[index(ix, iy)];
    const double v10 = elevation_[index(ix1, iy)];
    const double v01 = elevation_[index(ix, iy1)];
    const double v11 = elevation_[index(ix1, iy1)];
    const double v0 = v00 + (v10 - v00) * tx;
    const double v1 = v01 + (v11 - v01) * tx;
    return v0 + (v1 - v0) * ty;
}

WorldModel WorldModel::from_spec(const MapSpec& spec) {
    if (spec.resolution <= 0.0) throw ParseError("resolution must be positive");
    if (spec.width_m <= 0.0 || spec.height_m <= 0.0)
        throw ParseError("map width/height must be positive");

    WorldModel w;
    w.resolution_ = spec.resolution;
    w.width_ = static_cast<int>(std::ceil(spec.width_m / spec.resolution - 1e-9));
    w.height_ = static_cast<int>(std::ceil(spec.height_m / spec.resolution - 1e-9));
    w.width_ = std::max(1, w.width_);
    w.height_ = std::max(1, w.height_);
    const std::size_t cells = static_cast<std::size_t>(w.width_) * w.height_;
    w.occ_raw_.assign(cells, 0);
    w.elevation_.assign(cells, 0.0);
    w.obstacle_height_.assign(cells, 0.0);

    for (const auto& ramp : spec.ramps) {
        const double x0 = ramp.rect[0], y0 = ramp.rect[1], x1 = ramp.rect[2], y1 = ramp.rect[3];
        for (int iy = 0; iy < w.height_; ++iy) {
            for (int ix = 0; ix < w.width_; ++ix) {
                const double cx = (ix + 0.5) * w.resolution_;
                const double cy = (iy + 0.5) * w.resolution_;
                if (cx < x0 || cx > x1 || cy < y0 || cy > y1) continue;
                const double t = ramp.axis == 'y' ? (cy - y0) / std::max(1e-12, y1 - y0)
                                                  : (cx - x0) / std::max(1e-12, x1 - x0);
                w.elevation_[w.index(ix, iy)] = ramp.z0 + t * (ramp.z1 - ramp.z0);
            }
        }
    }

    for (const auto& obs : spec.obstacles) {
        if (obs.polygon.size() < 3) throw ParseError("obstacle polygon needs >= 3 vertices");
        if (obs.height < 0.0) throw ParseError("obstacle height must be >= 0");
        for (const auto& v : obs.polygon) {
            if (v[0] < -1e-9 || v[1] < -1e-9 || v[0] > spec.width_m + 1e-9 ||
                v[1] > spec.height_m + 1e-9)
                throw ParseError("obstacle polygon outside map bounds");
        }
        // Cells whose center falls inside the polygon are occupied.
        double minx = obs.polygon[0][0], maxx = minx, miny = obs.polygon[0][1], maxy = miny;
        for (const auto& v : obs.polygon) {
            minx = std::min(minx, v[0]);
            maxx = std::max(maxx, v[0]);
            miny = std::min(miny, v[1]);
            maxy = std::max(maxy, v[1]);
        }
        const int ix0 = std::max(0, w.cell_x(minx) - 1);
        const int ix1 = std::min(w.width_ - 1, w.cell_x(maxx) + 1);
        const int iy0 = std::max(0, w.cell_y(miny) - 1);
        const int iy1 = std::min(w.height_ - 1, w.cell_y(maxy) + 1);
        for (int iy = iy0; iy <= iy1; ++iy) {
            for (int ix = ix0; ix <= ix1; ++ix) {
                const double cx = (ix + 0.5) * w.resolution_;
                const double cy = (iy + 0.5) * w.resolution_;
                if (!point_in_polygon(cx, cy, obs.polygon)) continue;
                const std::size_t i = w.index(ix, iy);
                if (w.occ_raw_[i])
                    w.obstacle_height_[i] = std::max(w.obstacle_height_[i], obs.height);
                else
                    w.obstacle_height_[i] = obs.height;
                w.occ_raw_[i] = 1;
            }
        }
    }

    w.occ_ = w.occ_raw_;
    return w;
}

WorldModel WorldModel::inflate(double r_robot) const {
    if (r_robot < 0.0) throw std::invalid_argument("inflate: r_robot must be >= 0");
    const double r_exp = std::max(r_robot + 0.1, r_robot * 1.1);

    WorldModel out = *this;
    out.occ_ = occ_raw_;
    out.inflated_ = true;
    out.inflation_radius_ = r_exp;

    bool any = false;
    for (auto c : occ_raw_)
        if (c) {
            any = true;
            break;
        }
    if (!any) return out;

    const int R = static_cast<int>(std::ceil(r_exp / resolution_ + 1e-9));
    // Precompute in-range disk offsets (cell-center distance).
    std::vector<std::array<int, 2>> disk;
    for (int dy = -R; dy <= R; ++dy)
        for (int dx = -R; dx <= R; ++dx) {
            const double d = std::hypot(dx * resolution_, dy * resolution_);
            if (d <= r_exp + 1e-12) disk.push_back({dx, dy});
        }

    std::vector<double> best(occ_raw_.size(), std::numeric_limits<double>::infinity());
    for (int sy = 0; sy < height_; ++sy) {
        for (int sx = 0; sx < width_; ++sx) {
            if (!occ_raw_[index(sx, sy)]) continue;
            const double src_height = obstacle_height_[index(sx, sy)];
            for (const auto& off : disk) {
                const int tx = sx + off[0];
                const int ty = sy + off[1];
                if (!in_bounds(tx, ty)) continue;
                const std::size_t ti = index(tx, ty);
                if (occ_raw_[ti]) continue;  // originals keep their own height
                const double d = std::hypot(off[0] * resolution_, off[1] * resolution_);
                if (d < best[ti]) {
                    best[ti] = d;
                    out.occ_[ti] = 1;
                    out.obstacle_height_[ti] = src_height;
                }
            }
        }
    }
    return out;
}

namespace {

using nlohmann::json;

Scenario scenario_from_json(const json& j) {
    Scenario sc;
    if (!j.contains("resolution")) throw ParseError("missing \"resolution\"");
    sc.map.resolution = j.at("resolution").get<double>();
    if (sc.map.resolution <= 0.0) throw ParseError("resolution must be positive");
    sc.map.width_m = j.at("width").get<double>();
    sc.map.height_m = j.at("height").get<double>();

    if (j.contains("obstacles")) {
        for (const auto& jo : j.at("obstacles")) {
            PolygonObstacle obs;
            for (const auto& v : jo.at("polygon"))
                obs.polygon.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
            if (jo.contains("height") && !jo.at("height").is_null())
                obs.height = jo.at("height").get<double>();
            sc.map.obstacles.push_back(std::move(obs));
        }
    }
    if (j.contains("ramps")) {
        for (const auto& jr : j.at("ramps")) {
            RampSpec ramp;
            const auto& rect = jr.at("rect");
            ramp.rect = {rect.at(0).get<double>(), rect.at(1).get<double>(),
                         rect.at(2).get<double>(), rect.at(3).get<double>()};
            ramp.z0 = jr.at("z0").get<double>();
            ramp.z1 = jr.at("z1").get<double>();
            const std::string axis = jr.value("axis", "x");
            ramp.axis = axis == "y" ? 'y' : 'x';
            sc.map.ramps.push_back(ramp);
        }
    }
    if (j.contains("start")) {
        const auto& s = j.at("start");
        sc.start.x = s.at(0).get<double>();
        sc.start.y = s.at(1).get<double>();
        sc.start.theta = s.size() > 2 ? wrap_pi(s.at(2).get<double>()) : 0.0;
    }
    if (j.contains("goal")) {
        const auto& g = j.at("goal");
        sc.goal.x = g.at(0).get<double>();
        sc.goal.y = g.at(1).get<double>();
    }
    sc.params_json = j.contains("params") ? j.at("params").dump() : "{}";
    return sc;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_col_from_offset(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(std::string("scenario parse error: ") + e.what(), line, col);
    }
    try {
        return scenario_from_json(j);
    } catch (const ParseError&) {
        throw;
    } catch (const json::exception& e) {
        throw ParseError(std::string("scenario schema error: ") + e.what());
    }
}

WorldModel load_scenario(const std::string& text) {
    return WorldModel::from_spec(parse_scenario(text).map);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace fdspc
