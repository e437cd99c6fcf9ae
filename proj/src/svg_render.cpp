#include "stage/svg_render.hpp"

#include <cstdio>
#include <sstream>

namespace stage {

namespace {

// fixed two-decimal formatting keeps output bytes platform independent
std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

const char* fill_for(EntityKind kind) {
    switch (kind) {
        case EntityKind::anchor: return "#4a78b5";
        case EntityKind::non_anchor: return "#6fae6f";
        case EntityKind::ornament: return "#c7a84c";
    }
    return "#888888";
}

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

void rect(std::ostringstream& out, double x, double y, double w, double h,
          const std::string& fill, const std::string& extra = "") {
    out << "  <rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w)
        << "\" height=\"" << num(h) << "\" fill=\"" << fill << "\"" << extra << "/>\n";
}

void label(std::ostringstream& out, double x, double y, const std::string& text) {
    out << "  <text x=\"" << num(x) << "\" y=\"" << num(y)
        << "\" font-size=\"14\" font-family=\"sans-serif\" fill=\"#222\">" << escape(text)
        << "</text>\n";
}

} // namespace

std::string render_svg(const StageLayout& layout, RenderMode mode,
                       const std::vector<OcclusionBox>& occlusions) {
    const double n = layout.config.stage_size;
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << num(n) << " "
        << num(n) << "\">\n";
    rect(out, 0, 0, n, n, "#f7f5f0", " stroke=\"#333\" stroke-width=\"4\"");

    if (mode == RenderMode::top) {
        // y grows upstage; draw with the audience edge at the bottom
        for (const auto& p : layout.entities) {
            const auto& b = p.box;
            rect(out, b.x0, n - b.y1, b.x1 - b.x0, b.y1 - b.y0, fill_for(p.spec.kind),
                 " stroke=\"#333\" stroke-width=\"1\" fill-opacity=\"0.75\"");
            label(out, b.x0 + 4, n - b.y0 - 6, p.spec.id);
        }
    } else {
        for (const auto& occ : occlusions) {
            if (occ.wall_x1 > occ.wall_x0 && occ.wall_h1 > occ.wall_h0)
                rect(out, occ.wall_x0, n - occ.wall_h1, occ.wall_x1 - occ.wall_x0,
                     occ.wall_h1 - occ.wall_h0, "#d98080",
                     " fill-opacity=\"0.35\" stroke=\"#a33\" stroke-width=\"1\"");
        }
        for (const auto& p : layout.entities) {
            const auto& b = p.box;
            rect(out, b.x0, n - b.h1, b.x1 - b.x0, b.h1 - b.h0, fill_for(p.spec.kind),
                 " stroke=\"#333\" stroke-width=\"1\" fill-opacity=\"0.75\"");
            label(out, b.x0 + 4, n - b.h0 - 6, p.spec.id);
        }
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace stage
