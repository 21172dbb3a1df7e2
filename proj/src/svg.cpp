/**
 * @file svg.cpp
 * @brief SVG overlay of detected arcs on the input raster.
 */
#include "arcscan/svg.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace arcscan {

namespace {

constexpr std::array<const char*, 8> kPalette = {"#e41a1c", "#377eb8", "#4daf4a", "#984ea3",
                                                 "#ff7f00", "#a65628", "#f781bf", "#17becf"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

double screen_angle(RealPoint c, Pixel p) { return std::atan2(p.y - c.y, p.x - c.x); }

double wrap(double a) {
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    a = std::fmod(a, kTwoPi);
    return a < 0 ? a + kTwoPi : a;
}

// Pixel (x, y) covers [x, x+1) x [y, y+1); geometry is drawn through centres.
RealPoint shifted(RealPoint p) { return {p.x + 0.5, p.y + 0.5}; }

}  // namespace

std::string render_overlay(const BinaryImage& img, std::span<const ArcRecord> arcs) {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << img.width() << "\" height=\""
        << img.height() << "\" viewBox=\"0 0 " << img.width() << ' ' << img.height() << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    out << "<path fill=\"#b0b0b0\" d=\"";
    for (int y = 0; y < img.height(); ++y) {
        int x = 0;
        while (x < img.width()) {
            if (!img.test(x, y)) {
                ++x;
                continue;
            }
            const int x0 = x;
            while (x < img.width() && img.test(x, y)) ++x;
            out << 'M' << x0 << ' ' << y << 'h' << (x - x0) << "v1h" << (x0 - x) << 'z';
        }
    }
    out << "\"/>\n";

    for (std::size_t i = 0; i < arcs.size(); ++i) {
        const auto& arc = arcs[i];
        const char* colour = kPalette[i % kPalette.size()];
        const RealPoint c = shifted(arc.center);
        const std::string r = num(arc.radius);
        const auto& px = arc.segment.pixels;
        if (arc.segment.closed || px.size() < 3) {
            out << "<circle cx=\"" << num(c.x) << "\" cy=\"" << num(c.y) << "\" r=\"" << r
                << "\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\"/>\n";
        } else {
            const double ta = screen_angle(arc.center, px.front());
            const double tm = screen_angle(arc.center, px[px.size() / 2]);
            const double tb = screen_angle(arc.center, px.back());
            const double d_ab = wrap(tb - ta);
            const bool sweep = wrap(tm - ta) < d_ab;
            const double span = sweep ? d_ab : 2.0 * std::numbers::pi - d_ab;
            auto at = [&](double t) {
                return RealPoint{c.x + arc.radius * std::cos(t), c.y + arc.radius * std::sin(t)};
            };
            const RealPoint a = at(ta);
            const RealPoint b = at(tb);
            out << "<path d=\"M" << num(a.x) << ' ' << num(a.y) << 'A' << r << ' ' << r << " 0 "
                << (span > std::numbers::pi ? 1 : 0) << ' ' << (sweep ? 1 : 0) << ' ' << num(b.x) << ' '
                << num(b.y) << "\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\"/>\n";
        }
        constexpr double kArm = 3.0;
        out << "<path d=\"M" << num(c.x - kArm) << ' ' << num(c.y - kArm) << 'L' << num(c.x + kArm) << ' '
            << num(c.y + kArm) << 'M' << num(c.x - kArm) << ' ' << num(c.y + kArm) << 'L'
            << num(c.x + kArm) << ' ' << num(c.y - kArm) << "\" stroke=\"" << colour
            << "\" stroke-width=\"1\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void save_overlay(const BinaryImage& img, std::span<const ArcRecord> arcs, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << render_overlay(img, arcs);
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace arcscan
