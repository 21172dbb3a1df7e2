/**
 * @file serialize.cpp
 * @brief JSON and CSV forms of arcs, scenes, ground truth and metrics.
 */
#include "arcscan/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace arcscan {

namespace fs = std::filesystem;

json read_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw IoError("cannot parse " + path.string() + ": " + e.what());
    }
}

void write_json(const json& doc, const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

const char* to_string(ArcSource source) {
    return source == ArcSource::hough ? "hough" : "sagitta";
}

namespace {

json point_json(RealPoint p) { return json::array({p.x, p.y}); }
json pixel_json(Pixel p) { return json::array({p.x, p.y}); }

RealPoint point_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected [x, y], got " + j.dump());
    return {j[0].get<double>(), j[1].get<double>()};
}

Pixel pixel_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected [x, y], got " + j.dump());
    return {j[0].get<int>(), j[1].get<int>()};
}

const char* kind_name(PrimitiveKind k) {
    switch (k) {
    case PrimitiveKind::circle: return "circle";
    case PrimitiveKind::arc: return "arc";
    case PrimitiveKind::line: return "line";
    }
    return "circle";
}

PrimitiveKind kind_from(const std::string& s) {
    if (s == "circle") return PrimitiveKind::circle;
    if (s == "arc") return PrimitiveKind::arc;
    if (s == "line") return PrimitiveKind::line;
    throw std::invalid_argument("unknown primitive kind '" + s + "'");
}

}  // namespace

json arc_to_json(const ArcRecord& arc) {
    json endpoints = json::array();
    if (!arc.segment.empty()) {
        endpoints.push_back(pixel_json(arc.segment.front()));
        endpoints.push_back(pixel_json(arc.segment.back()));
    }
    return {{"center", point_json(arc.center)},
            {"radius", arc.radius},
            {"endpoints", std::move(endpoints)},
            {"closed", arc.segment.closed},
            {"n_pixels", arc.segment.size()},
            {"source", to_string(arc.source)}};
}

ArcRecord arc_from_json(const json& j) {
    try {
        ArcRecord rec;
        rec.center = point_from(j.at("center"));
        rec.radius = j.at("radius").get<double>();
        rec.segment.closed = j.at("closed").get<bool>();
        for (const auto& e : j.at("endpoints")) {
            const Pixel p = pixel_from(e);
            if (rec.segment.pixels.empty() || rec.segment.pixels.back() != p) rec.segment.pixels.push_back(p);
        }
        const auto src = j.at("source").get<std::string>();
        if (src != "sagitta" && src != "hough") throw std::invalid_argument("unknown source '" + src + "'");
        rec.source = src == "hough" ? ArcSource::hough : ArcSource::sagitta;
        return rec;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed arc record: ") + e.what());
    }
}

json arcs_document(std::span<const ArcRecord> arcs, int width, int height, const std::string& algorithm) {
    json arr = json::array();
    for (const auto& a : arcs) arr.push_back(arc_to_json(a));
    return {{"width", width}, {"height", height}, {"algorithm", algorithm}, {"arcs", std::move(arr)}};
}

std::vector<ArcRecord> arcs_from_document(const json& doc) {
    if (!doc.is_object() || !doc.contains("arcs") || !doc["arcs"].is_array())
        throw std::invalid_argument("arcs document has no 'arcs' array");
    std::vector<ArcRecord> out;
    for (const auto& j : doc["arcs"]) out.push_back(arc_from_json(j));
    return out;
}

json scene_to_json(const SceneSpec& scene) {
    json circles = json::array();
    for (const auto& c : scene.circles) {
        json jc = {{"center", pixel_json(c.center)}, {"radius", c.radius}};
        if (!c.full()) {
            jc["start"] = c.start;
            jc["end"] = c.end;
        }
        circles.push_back(std::move(jc));
    }
    json lines = json::array();
    for (const auto& l : scene.lines) lines.push_back({{"a", pixel_json(l.a)}, {"b", pixel_json(l.b)}});
    return {{"width", scene.width},
            {"height", scene.height},
            {"thickness", scene.thickness},
            {"circles", std::move(circles)},
            {"lines", std::move(lines)}};
}

SceneSpec scene_from_json(const json& j) {
    try {
        SceneSpec s;
        s.width = j.at("width").get<int>();
        s.height = j.at("height").get<int>();
        s.thickness = j.value("thickness", 1);
        for (const auto& jc : j.value("circles", json::array())) {
            CircleSpec c;
            c.center = pixel_from(jc.at("center"));
            c.radius = jc.at("radius").get<int>();
            if (jc.contains("start") != jc.contains("end"))
                throw std::invalid_argument("arc needs both 'start' and 'end'");
            if (jc.contains("start")) {
                c.start = jc["start"].get<double>();
                c.end = jc["end"].get<double>();
            }
            s.circles.push_back(c);
        }
        for (const auto& jl : j.value("lines", json::array()))
            s.lines.push_back({pixel_from(jl.at("a")), pixel_from(jl.at("b"))});
        return s;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed scene: ") + e.what());
    }
}

void save_truth(const GroundTruth& truth, const fs::path& path) {
    const auto stem = path.stem().string();
    const fs::path arc_name = stem + ".arc.pbm";
    const fs::path all_name = stem + ".all.pbm";
    save_pbm(truth.arc_mask, path.parent_path() / arc_name);
    save_pbm(truth.all_curves_mask, path.parent_path() / all_name);
    json prims = json::array();
    for (const auto& p : truth.primitives) {
        json jp = {{"kind", kind_name(p.kind)}};
        if (p.circular()) {
            jp["center"] = point_json(p.center);
            jp["radius"] = p.radius;
            if (p.kind == PrimitiveKind::arc) {
                jp["start"] = p.start;
                jp["end"] = p.end;
            }
        } else {
            jp["a"] = point_json(p.a);
            jp["b"] = point_json(p.b);
        }
        prims.push_back(std::move(jp));
    }
    write_json({{"width", truth.arc_mask.width()},
                {"height", truth.arc_mask.height()},
                {"primitives", std::move(prims)},
                {"arc_mask", arc_name.string()},
                {"all_curves_mask", all_name.string()}},
               path);
}

GroundTruth load_truth(const fs::path& path) {
    const json j = read_json(path);
    try {
        const auto dir = path.parent_path();
        GroundTruth t{load_binary(dir / j.at("arc_mask").get<std::string>()),
                      load_binary(dir / j.at("all_curves_mask").get<std::string>()),
                      {}};
        if (t.arc_mask.width() != j.at("width").get<int>() || t.arc_mask.height() != j.at("height").get<int>())
            throw std::invalid_argument("mask size differs from the declared size");
        for (const auto& jp : j.at("primitives")) {
            Primitive p;
            p.kind = kind_from(jp.at("kind").get<std::string>());
            if (p.circular()) {
                p.center = point_from(jp.at("center"));
                p.radius = jp.at("radius").get<double>();
                if (p.kind == PrimitiveKind::arc) {
                    p.start = jp.at("start").get<double>();
                    p.end = jp.at("end").get<double>();
                } else {
                    p.end = 2.0 * std::numbers::pi;
                }
            } else {
                p.a = point_from(jp.at("a"));
                p.b = point_from(jp.at("b"));
            }
            t.primitives.push_back(p);
        }
        return t;
    } catch (const json::exception& e) {
        throw std::invalid_argument("malformed ground truth " + path.string() + ": " + e.what());
    }
}

std::string format_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

json metrics_to_json(const MetricsReport& m) {
    auto num = [](double v) -> json { return std::isinf(v) ? json("inf") : json(v); };
    return {{"N_c", m.N_c},   {"N_g", m.N_g}, {"N_p", m.N_p},   {"N_fa", m.N_fa},
            {"N_fr", m.N_fr}, {"E1", num(m.E1)}, {"E2", num(m.E2)}, {"AD", num(m.AD)}};
}

std::string metrics_csv_header() { return "N_c,N_g,N_p,N_fa,N_fr,E1,E2,AD"; }

std::string metrics_csv_row(const MetricsReport& m) {
    return std::to_string(m.N_c) + ',' + std::to_string(m.N_g) + ',' + std::to_string(m.N_p) + ',' +
           std::to_string(m.N_fa) + ',' + std::to_string(m.N_fr) + ',' + format_number(m.E1) + ',' +
           format_number(m.E2) + ',' + format_number(m.AD);
}

}  // namespace arcscan
