#include "fdspc/svg_render.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace fdspc {

namespace {

struct Canvas {
    double ppm;
    double h_px;
    double px(double x) const { return x * ppm; }
    double py(double y) const { return h_px - y * ppm; }  // y grows upward
};

void header(std::ostringstream& out, const WorldModel& w, const Canvas& c) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << c.px(w.width_m())
        << "\" height=\"" << c.h_px << "\" viewBox=\"0 0 " << c.px(w.width_m()) << " " << c.h_px
        << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
}

// Merge runs of same-class cells per row to keep the file small.
void draw_cells(std::ostringstream& out, const WorldModel& w, const Canvas& c,
                bool inflation_layer) {
    const double res = w.resolution();
    for (int iy = 0; iy < w.height(); ++iy) {
        int run_start = -1;
        for (int ix = 0; ix <= w.width(); ++ix) {
            bool on = false;
            if (ix < w.width()) {
                const bool occ = w.occupied_cell(ix, iy);
                const bool raw = w.raw_occupied_cell(ix, iy);
                on = inflation_layer ? (occ && !raw) : raw;
            }
            if (on && run_start < 0) run_start = ix;
            if (!on && run_start >= 0) {
                char buf[160];
                std::snprintf(buf, sizeof(buf),
                              "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
                              "fill=\"%s\"/>\n",
                              c.px(run_start * res), c.py((iy + 1) * res),
                              c.px((ix - run_start) * res), c.px(res),
                              inflation_layer ? "#c8c8e8" : "#404040");
                out << buf;
                run_start = -1;
            }
        }
    }
}

void draw_path(std::ostringstream& out, const std::vector<Point25>& path, const Canvas& c,
               const char* color) {
    if (path.size() < 2) return;
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    // Thin dense paths so the polyline stays manageable.
    const std::size_t stride = std::max<std::size_t>(1, path.size() / 2000);
    char buf[64];
    for (std::size_t i = 0; i < path.size(); i += stride) {
        std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", c.px(path[i].x), c.py(path[i].y));
        out << buf;
    }
    std::snprintf(buf, sizeof(buf), "%.2f,%.2f", c.px(path.back().x), c.py(path.back().y));
    out << buf << "\"/>\n";
}

void draw_marker(std::ostringstream& out, const Point25& p, const Canvas& c, const char* color) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"5\" fill=\"%s\"/>\n",
                  c.px(p.x), c.py(p.y), color);
    out << buf;
}

}  // namespace

std::string render_map_svg(const WorldModel& world, const std::vector<Point25>& path,
                           const Point25& start, const Point25& goal, const SvgOptions& opts) {
    std::ostringstream out;
    const Canvas c{opts.pixels_per_meter, world.height_m() * opts.pixels_per_meter};
    header(out, world, c);
    if (opts.draw_inflation && world.inflated()) draw_cells(out, world, c, true);
    draw_cells(out, world, c, false);
    draw_path(out, path, c, "#d62728");
    draw_marker(out, start, c, "#2ca02c");
    draw_marker(out, goal, c, "#9467bd");
    out << "</svg>\n";
    return out.str();
}

std::string render_tree_svg(const WorldModel& world, const std::string& tree_json,
                            const std::vector<Point25>& path, const Point25& start,
                            const Point25& goal, const SvgOptions& opts) {
    std::ostringstream out;
    const Canvas c{opts.pixels_per_meter, world.height_m() * opts.pixels_per_meter};
    header(out, world, c);
    if (opts.draw_inflation && world.inflated()) draw_cells(out, world, c, true);
    draw_cells(out, world, c, false);
    draw_path(out, path, c, "#d62728");

    const auto j = nlohmann::json::parse(tree_json);
    char buf[160];
    for (const auto& n : j.at("nodes")) {
        const bool closed = n.value("closed", false);
        std::snprintf(buf, sizeof(buf),
                      "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"%s\"/>\n",
                      c.px(n.at("x").get<double>()), c.py(n.at("y").get<double>()),
                      closed ? "#d62728" : "#1f77b4");
        out << buf;
    }
    draw_marker(out, start, c, "#2ca02c");
    draw_marker(out, goal, c, "#9467bd");
    out << "</svg>\n";
    return out.str();
}

}  // namespace fdspc
