/**
 * @file cli.cpp
 * @brief Command-line front end: detect, synth, eval and bench.
 */
#include "arcscan/cli.hpp"

#include "arcscan/serialize.hpp"
#include "arcscan/svg.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace arcscan {

namespace fs = std::filesystem;

const char* to_string(Algorithm a) {
    switch (a) {
    case Algorithm::csa: return "csa";
    case Algorithm::rht: return "rht";
    case Algorithm::evm: return "evm";
    }
    return "csa";
}

Algorithm parse_algorithm(const std::string& name) {
    if (name == "csa") return Algorithm::csa;
    if (name == "rht") return Algorithm::rht;
    if (name == "evm") return Algorithm::evm;
    throw std::invalid_argument("unknown algorithm '" + name + "' (expected csa, rht or evm)");
}

AlgorithmResult run_algorithm(Algorithm algo, const BinaryImage& img, const AlgorithmConfigs& cfg) {
    AlgorithmResult out;
    if (algo == Algorithm::csa) {
        auto det = detect_detailed(img, cfg.csa);
        out.arcs = std::move(det.arcs);
        out.mask = std::move(det.mask);
        return out;
    }
    out.arcs = algo == Algorithm::rht ? rht_detect(img, cfg.rht) : evm_detect(img, cfg.evm);
    const auto masks = absorb_thick_pixels(out.arcs, img, cfg.csa.absorb_distance);
    out.mask = union_mask(masks, img);
    return out;
}

unsigned thread_cap() {
    if (const char* env = std::getenv("ARCSCAN_THREADS"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != nullptr && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
        throw std::invalid_argument(std::string("ARCSCAN_THREADS must be a positive integer, got '") + env + "'");
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct Options {
    std::string algo = "csa";
    std::string in;
    std::string out;
    std::string overlay;
    std::string mask;
    std::string truth;
    std::string spec;
    std::string scene_out;
    std::string csv;
    std::vector<std::string> scenes;
    std::vector<std::string> algos{"csa", "rht", "evm"};
    std::uint64_t seed = 0;
    std::size_t count = 0;
    int threshold = kDefaultThreshold;
    double noise = 0.0;
    double rotate_deg = 0.0;
    double tol_center = 2.0;
    double tol_radius = 2.0;
    double tol_radius_rel = 0.02;
    AlgorithmConfigs cfg;
};

void add_algorithm_flags(CLI::App& sub, Options& o) {
    sub.add_option("--tau-h", o.cfg.csa.tau_h, "CSA straightness threshold")->capture_default_str();
    sub.add_option("--tau-c", o.cfg.csa.tau_c, "CSA shortest arc examined, pixels")->capture_default_str();
    sub.add_option("--delta-phi", o.cfg.csa.delta_phi, "CSA chord-angle tolerance, radians")
        ->capture_default_str();
    sub.add_option("--budget", o.cfg.csa.hough_triple_budget, "CSA restricted Hough triples per arc")
        ->capture_default_str();
    sub.add_option("--tr", o.cfg.rht.T_r, "RHT minimum existing rate")->capture_default_str();
    sub.add_option("--nt", o.cfg.rht.n_t, "RHT candidate promotion score")->capture_default_str();
    sub.add_option("--te", o.cfg.evm.T_e, "EVM minimum existing rate")->capture_default_str();
}

void apply_seed(Options& o) {
    o.cfg.csa.rng_seed = o.seed;
    o.cfg.rht.rng_seed = o.seed;
    o.cfg.evm.rng_seed = o.seed;
    o.cfg.csa.validate();
    o.cfg.rht.validate();
    o.cfg.evm.validate();
}

void emit_json(const json& doc, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << doc.dump(2) << '\n';
    } else {
        write_json(doc, path);
    }
}

void write_text(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write " + path);
    f << text;
    if (!f) throw IoError("write failed: " + path);
}

// -----------------------------------------------------------------------------
// Subcommands
// -----------------------------------------------------------------------------

void cmd_detect(Options& o, std::ostream& out) {
    apply_seed(o);
    const Algorithm algo = parse_algorithm(o.algo);
    const BinaryImage img = load_binary(o.in, o.threshold);
    const auto res = run_algorithm(algo, img, o.cfg);
    emit_json(arcs_document(res.arcs, img.width(), img.height(), to_string(algo)), o.out, out);
    if (!o.overlay.empty()) save_overlay(img, res.arcs, o.overlay);
    if (!o.mask.empty()) save_binary(res.mask, o.mask);
}

struct PreparedScene {
    std::string name;
    BinaryImage image{1, 1};
    GroundTruth truth;
};

PreparedScene prepare_scene(const SceneSpec& spec, std::string name, double noise, double degrees,
                            std::uint64_t noise_seed) {
    auto scene = synth_scene(spec);
    PreparedScene p{std::move(name), std::move(scene.image), std::move(scene.truth)};
    if (degrees != 0.0) {
        p.image = rotate(p.image, degrees);
        p.truth = rotate_truth(p.truth, degrees);
    }
    if (noise > 0.0) p.image = add_salt_pepper(p.image, noise, noise_seed);
    return p;
}

void cmd_synth(Options& o, std::ostream&) {
    if (o.out.empty()) throw std::invalid_argument("synth: --out is required");
    const SceneSpec spec = o.spec.empty() ? random_scene(o.seed) : scene_from_json(read_json(o.spec));
    const auto scene = prepare_scene(spec, "", o.noise, o.rotate_deg, o.seed);
    save_binary(scene.image, o.out);
    if (!o.truth.empty()) save_truth(scene.truth, o.truth);
    if (!o.scene_out.empty()) write_json(scene_to_json(spec), o.scene_out);
}

void cmd_eval(Options& o, std::ostream& out) {
    if (o.mask.empty()) throw std::invalid_argument("eval: --mask (detected pixel mask) is required");
    if (o.truth.empty()) throw std::invalid_argument("eval: --truth is required");
    const GroundTruth truth = load_truth(o.truth);
    const BinaryImage mask = load_binary(o.mask);
    const MetricsReport m = compute_metrics(mask, truth);
    json doc = {{"metrics", metrics_to_json(m)}};
    std::string csv_header = metrics_csv_header();
    std::string csv_row = metrics_csv_row(m);
    if (!o.in.empty()) {
        const json arcs_doc = read_json(o.in);
        const auto arcs = arcs_from_document(arcs_doc);
        const auto match = match_primitives(arcs, truth.primitives,
                                            MatchTolerance{o.tol_center, o.tol_radius, o.tol_radius_rel});
        doc["algorithm"] = arcs_doc.value("algorithm", "");
        doc["matching"] = {{"matched", match.matched}, {"missed", match.missed}, {"spurious", match.spurious}};
        csv_header += ",matched,missed,spurious";
        csv_row += ',' + std::to_string(match.matched) + ',' + std::to_string(match.missed) + ',' +
                   std::to_string(match.spurious);
    }
    emit_json(doc, o.out, out);
    if (!o.csv.empty()) write_text(csv_header + '\n' + csv_row + '\n', o.csv, out);
}

struct BenchRow {
    std::string scene;
    Algorithm algo;
    std::size_t n_pixels = 0;
    double seconds = 0.0;
    MetricsReport metrics;
    MatchResult match;
};

void cmd_bench(Options& o, std::ostream& out) {
    apply_seed(o);
    std::vector<Algorithm> algos;
    for (const auto& a : o.algos) algos.push_back(parse_algorithm(a));
    std::vector<std::pair<std::string, SceneSpec>> specs;
    for (const auto& path : o.scenes) specs.emplace_back(fs::path(path).stem().string(), scene_from_json(read_json(path)));
    for (std::size_t i = 0; i < o.count; ++i)
        specs.emplace_back("random-" + std::to_string(o.seed + i), random_scene(o.seed + i));
    if (specs.empty()) throw std::invalid_argument("bench: give --scene files or --count");

    std::vector<BenchRow> rows(specs.size() * algos.size());
    std::vector<std::string> errors(specs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < specs.size(); i = next++) {
            try {
                const auto scene = prepare_scene(specs[i].second, specs[i].first, o.noise, o.rotate_deg, o.seed + i);
                for (std::size_t a = 0; a < algos.size(); ++a) {
                    const auto t0 = std::chrono::steady_clock::now();
                    const auto res = run_algorithm(algos[a], scene.image, o.cfg);
                    const auto t1 = std::chrono::steady_clock::now();
                    auto& row = rows[i * algos.size() + a];
                    row.scene = scene.name;
                    row.algo = algos[a];
                    row.n_pixels = scene.image.count();
                    row.seconds = std::chrono::duration<double>(t1 - t0).count();
                    row.metrics = compute_metrics(res.mask, scene.truth);
                    row.match = match_primitives(res.arcs, scene.truth.primitives,
                                                 MatchTolerance{o.tol_center, o.tol_radius, o.tol_radius_rel});
                }
            } catch (const std::exception& e) {
                errors[i] = specs[i].first + ": " + e.what();
            }
        }
    };
    const unsigned n_threads = std::min<std::size_t>(thread_cap(), specs.size());
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (!e.empty()) throw std::runtime_error("bench: " + e);

    std::ostringstream csv;
    csv << "scene,algo,seed,n_pixels,time_s,E1,E2,AD,matched,missed,spurious\n";
    for (const auto& r : rows) {
        csv << r.scene << ',' << to_string(r.algo) << ',' << o.seed << ',' << r.n_pixels << ','
            << format_number(r.seconds) << ',' << format_number(r.metrics.E1) << ','
            << format_number(r.metrics.E2) << ',' << format_number(r.metrics.AD) << ',' << r.match.matched
            << ',' << r.match.missed << ',' << r.match.spurious << '\n';
    }
    write_text(csv.str(), o.out, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"arcscan: circle and arc detection in binary images"};
    app.require_subcommand(1);
    Options o;

    auto* detect = app.add_subcommand("detect", "Detect circles and arcs in an image");
    detect->add_option("--algo", o.algo, "Detector: csa, rht or evm")->capture_default_str();
    detect->add_option("--in", o.in, "Input image (PNG, PGM or PBM)")->required();
    detect->add_option("--out", o.out, "Arcs JSON output; stdout when omitted");
    detect->add_option("--overlay", o.overlay, "SVG overlay output");
    detect->add_option("--mask", o.mask, "Detected pixel mask output (PBM or PNG)");
    detect->add_option("--threshold", o.threshold, "Gray level below which a pixel is object")
        ->capture_default_str();
    detect->add_option("--seed", o.seed, "Seed for randomized steps")->capture_default_str();
    add_algorithm_flags(*detect, o);

    auto* synth = app.add_subcommand("synth", "Render a scene and its ground truth");
    synth->add_option("--spec", o.spec, "Scene JSON; a random scene from --seed when omitted");
    synth->add_option("--seed", o.seed, "Random scene and noise seed")->capture_default_str();
    synth->add_option("--out", o.out, "Image output (PBM or PNG)")->required();
    synth->add_option("--truth", o.truth, "Ground-truth JSON output");
    synth->add_option("--scene-out", o.scene_out, "Write the scene JSON that was rendered");
    synth->add_option("--noise", o.noise, "Salt-and-pepper fraction of flipped pixels")->capture_default_str();
    synth->add_option("--rotate", o.rotate_deg, "Rotation in degrees, clockwise on screen")->capture_default_str();

    auto* eval = app.add_subcommand("eval", "Score a detection against ground truth");
    eval->add_option("--in", o.in, "Arcs JSON from detect; enables primitive matching");
    eval->add_option("--mask", o.mask, "Detected pixel mask from detect --mask")->required();
    eval->add_option("--truth", o.truth, "Ground-truth JSON from synth")->required();
    eval->add_option("--out", o.out, "Metrics JSON output; stdout when omitted");
    eval->add_option("--csv", o.csv, "Metrics CSV output (header and one row)");
    eval->add_option("--tol-center", o.tol_center, "Centre tolerance, px")->capture_default_str();
    eval->add_option("--tol-radius", o.tol_radius, "Radius tolerance, px")->capture_default_str();
    eval->add_option("--tol-radius-rel", o.tol_radius_rel, "Relative radius tolerance")->capture_default_str();

    auto* bench = app.add_subcommand("bench", "Time and score detectors on a list of scenes");
    bench->add_option("--scene", o.scenes, "Scene JSON files");
    bench->add_option("--count", o.count, "Number of random scenes, seeds --seed onward")->capture_default_str();
    bench->add_option("--seed", o.seed, "First random scene seed, also used by the detectors")
        ->capture_default_str();
    bench->add_option("--algo", o.algos, "Detectors to run")->capture_default_str()->delimiter(',');
    bench->add_option("--noise", o.noise, "Salt-and-pepper fraction")->capture_default_str();
    bench->add_option("--rotate", o.rotate_deg, "Rotation in degrees")->capture_default_str();
    bench->add_option("--out", o.out, "CSV output; stdout when omitted");
    bench->add_option("--tol-center", o.tol_center, "Centre tolerance, px")->capture_default_str();
    bench->add_option("--tol-radius", o.tol_radius, "Radius tolerance, px")->capture_default_str();
    bench->add_option("--tol-radius-rel", o.tol_radius_rel, "Relative radius tolerance")->capture_default_str();
    add_algorithm_flags(*bench, o);

    std::vector<std::string> argv_store{"arcscan"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_store) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (detect->parsed()) cmd_detect(o, out);
        else if (synth->parsed()) cmd_synth(o, out);
        else if (eval->parsed()) cmd_eval(o, out);
        else if (bench->parsed()) cmd_bench(o, out);
    } catch (const std::exception& e) {
        err << "arcscan: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace arcscan
