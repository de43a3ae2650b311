// Command-line front end: flag parsing, dispatch, and JSON/CSV/PPM emission.
// Numerical work lives in the library; this file only wires it together.
//
// Exit codes: 0 success, 1 usage error (bad flags or value syntax), 2 domain
// error (well-formed request the mathematics rejects, and I/O failures).
// Every run echoes its fully resolved configuration to stderr as one JSON
// line. File outputs are written atomically (temp file + rename).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sdyn/bubbles.hpp"
#include "sdyn/dynamics.hpp"
#include "sdyn/model.hpp"
#include "sdyn/multiangle.hpp"
#include "sdyn/render.hpp"
#include "sdyn/rotation.hpp"
#include "sdyn/siegel.hpp"

using nlohmann::json;
using namespace sdyn;

namespace {

// Value-syntax problem in an otherwise parsed flag: a usage error (exit 1),
// unlike domain errors thrown by the library (exit 2).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

cplx parse_complex(const std::string& text, const char* flag) {
    std::istringstream in(text);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(in >> re)) throw UsageError(std::string(flag) + ": expected re,im, got '" + text + "'");
    if (in >> comma) {
        if (comma != ',' || !(in >> im))
            throw UsageError(std::string(flag) + ": expected re,im, got '" + text + "'");
    }
    std::string rest;
    if (in >> rest) throw UsageError(std::string(flag) + ": trailing text in '" + text + "'");
    return {re, im};
}

std::pair<int, int> parse_resolution(const std::string& text) {
    int w = 0, h = 0;
    char x = 0;
    std::istringstream in(text);
    if (!(in >> w >> x >> h) || (x != 'x' && x != 'X') || w <= 0 || h <= 0)
        throw UsageError("--res: expected WxH, got '" + text + "'");
    std::string rest;
    if (in >> rest) throw UsageError("--res: trailing text in '" + text + "'");
    return {w, h};
}

MultiAngle parse_ma(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("--ma: not a JSON array: ") + e.what());
    }
    if (!j.is_array()) throw UsageError("--ma: expected a JSON array like [0,0,1]");
    MultiAngle ma;
    for (const auto& v : j) {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
            throw UsageError("--ma: entries must be nonnegative integers");
        ma.push_back(v.get<std::int64_t>());
    }
    return ma;
}

std::vector<std::int64_t> parse_pattern(const std::string& text) {
    std::vector<std::int64_t> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            size_t pos = 0;
            long long v = std::stoll(item, &pos);
            if (pos != item.size() || v < 1) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("--pattern: expected comma-separated positive integers, got '" +
                             text + "'");
        }
    }
    if (out.empty()) throw UsageError("--pattern: empty pattern");
    return out;
}

// The rotation number: --cf takes precedence over --rot so scripts can keep a
// preset default while overriding with explicit continued fractions.
RotationNumber resolve_rotation(const std::string& rot, const std::string& cf) {
    return RotationNumber::parse(cf.empty() ? rot : cf);
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

void echo_config(const std::string& subcommand, const json& options) {
    json echo{{"version", kVersion}, {"subcommand", subcommand}, {"options", options}};
    std::cerr << echo.dump() << "\n";
}

void atomic_write_text(const std::string& path, const std::string& body) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
        out << body;
        if (!out.flush()) throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

void atomic_write_ppm(const Raster& raster, const std::string& path) {
    const std::string tmp = path + ".tmp";
    write_ppm(raster, tmp);
    std::filesystem::rename(tmp, path);
}

// JSON goes to --out when given, else to stdout (never mixed with other
// formats there).
void emit_json(const json& j, const std::string& out_path) {
    const std::string body = j.dump(2) + "\n";
    if (out_path.empty())
        std::cout << body;
    else
        atomic_write_text(out_path, body);
}

const char* kind_name(BubbleKind k) {
    switch (k) {
        case BubbleKind::siegel_disk: return "siegel_disk";
        case BubbleKind::off_critical: return "off_critical";
        case BubbleKind::critical: return "critical";
        case BubbleKind::precritical: return "precritical";
    }
    return "unknown";
}

// Shared region/budget flags for the two render subcommands.
struct RenderFlags {
    std::string center = "0,0";
    double width = 8.0;
    double height = 0.0;  // 0 = same as width
    std::string res = "512x512";
    int max_iter = 1000;
    double escape_radius = 100.0;
    int threads = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--center", center, "region center as re,im")->capture_default_str();
        cmd->add_option("--width", width, "region width")->capture_default_str();
        cmd->add_option("--height", height, "region height (default: width)")
            ->capture_default_str();
        cmd->add_option("--res", res, "resolution WxH")->capture_default_str();
        cmd->add_option("--max-iter", max_iter, "escape-time iteration budget")
            ->capture_default_str();
        cmd->add_option("--escape-radius", escape_radius, "escape radius (>= 4)")
            ->capture_default_str();
        cmd->add_option("--threads", threads,
                        "render threads, 0 = hardware concurrency (speed only, never bytes)")
            ->capture_default_str();
    }

    RenderConfig config() const {
        RenderConfig cfg;
        cfg.center = parse_complex(center, "--center");
        cfg.width = width;
        cfg.height = height > 0.0 ? height : width;
        auto [w, h] = parse_resolution(res);
        cfg.width_px = w;
        cfg.height_px = h;
        cfg.max_iter = max_iter;
        cfg.escape_radius = escape_radius;
        cfg.threads = threads;
        return cfg;
    }

    json echo(const RenderConfig& cfg) const {
        return json{{"center", complex_json(cfg.center)},
                    {"width", cfg.width},
                    {"height", cfg.height},
                    {"res", {cfg.width_px, cfg.height_px}},
                    {"max_iter", cfg.max_iter},
                    {"escape_radius", cfg.escape_radius},
                    {"threads", cfg.threads}};
    }
};

json model_point_json(BubbleTree& q_tree, const ModelPoint& mp) {
    json j;
    j["address"] = mp.ma;
    if (std::isinf(mp.rho))
        j["rho"] = nullptr;  // infinite sentinel for truncated addresses
    else
        j["rho"] = mp.rho;
    j["embedded"] = complex_json(mp.embedded);
    const ModelPoint q = quotient_project(q_tree, mp);
    if (q.angle && q.ma.empty() && q.rho == 1.0)
        j["canonical_angle"] = *q.angle;
    else
        j["canonical_angle"] = nullptr;
    j["depth"] = mp.depth;
    j["resolved"] = mp.resolved;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Siegel disks, bubbles, multi-angles, and the cubic parameter map"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    // Common rotation-number flags, duplicated per subcommand so each echoes
    // a complete configuration.
    struct {
        std::string rot = "golden";
        std::string cf;
    } rots[8];
    auto add_rot = [&](CLI::App* cmd, int i) {
        cmd->add_option("--rot", rots[i].rot, "rotation number preset or pre:period syntax")
            ->capture_default_str();
        cmd->add_option("--cf", rots[i].cf,
                        "continued fraction pre:period (overrides --rot), e.g. 1:2");
    };

    // ---------------------------------------------------------- render-param
    auto* cmd_rp = app.add_subcommand("render-param", "escape-time parameter plane as PPM");
    RenderFlags rp_flags;
    rp_flags.attach(cmd_rp);
    add_rot(cmd_rp, 0);
    std::string rp_plane = "a";
    std::string rp_out;
    cmd_rp->add_option("--plane", rp_plane, "parameter plane: a or c")->capture_default_str();
    cmd_rp->add_option("--out", rp_out, "output PPM path")->required();

    // ------------------------------------------------------------ render-dyn
    auto* cmd_rd = app.add_subcommand("render-dyn", "escape-time dynamical plane as PPM");
    RenderFlags rd_flags;
    rd_flags.attach(cmd_rd);
    add_rot(cmd_rd, 1);
    std::string rd_family = "q";
    std::string rd_c = "1,0";
    std::string rd_a = "1,0";
    std::vector<std::string> rd_overlays;
    std::string rd_out;
    cmd_rd->add_option("--family", rd_family, "map family: q, cubic, or figone")
        ->capture_default_str();
    cmd_rd->add_option("--c", rd_c, "cubic parameter re,im")->capture_default_str();
    cmd_rd->add_option("--a", rd_a, "figone parameter re,im")->capture_default_str();
    cmd_rd->add_option("--overlay", rd_overlays,
                       "overlay: 'siegel' or 'bubbles:G' (repeatable)");
    cmd_rd->add_option("--out", rd_out, "output PPM path")->required();

    // --------------------------------------------------------- siegel-series
    auto* cmd_ss = app.add_subcommand("siegel-series",
                                      "linearization coefficients and residuals as JSON");
    add_rot(cmd_ss, 2);
    std::string ss_family = "q";
    std::string ss_c = "1,0";
    int ss_terms = 200;
    int ss_samples = 2000;
    std::string ss_out;
    std::string ss_csv;
    cmd_ss->add_option("--family", ss_family, "map family: q or cubic")->capture_default_str();
    cmd_ss->add_option("--c", ss_c, "cubic parameter re,im")->capture_default_str();
    cmd_ss->add_option("--terms", ss_terms, "series terms")->capture_default_str();
    cmd_ss->add_option("--samples", ss_samples, "boundary orbit samples")->capture_default_str();
    cmd_ss->add_option("--out", ss_out, "output JSON path (default: stdout)");
    cmd_ss->add_option("--csv", ss_csv, "also export boundary samples as CSV (k,angle,re,im)");

    // ------------------------------------------------------------ bubble-tree
    auto* cmd_bt = app.add_subcommand("bubble-tree", "bubble tree as JSON");
    add_rot(cmd_bt, 3);
    std::string bt_family = "q";
    std::string bt_c = "1,0";
    int bt_max_gen = 3;
    double bt_min_diam = 1e-3;
    int bt_terms = 200;
    int bt_samples = 2000;
    std::string bt_out;
    cmd_bt->add_option("--family", bt_family, "map family: q or cubic")->capture_default_str();
    cmd_bt->add_option("--c", bt_c, "cubic parameter re,im")->capture_default_str();
    cmd_bt->add_option("--max-gen", bt_max_gen, "largest bubble generation (<= 12)")
        ->capture_default_str();
    cmd_bt->add_option("--min-diam", bt_min_diam, "smallest bubble diameter kept")
        ->capture_default_str();
    cmd_bt->add_option("--terms", bt_terms, "series terms")->capture_default_str();
    cmd_bt->add_option("--samples", bt_samples, "boundary orbit samples")->capture_default_str();
    cmd_bt->add_option("--out", bt_out, "output JSON path (default: stdout)");

    // -------------------------------------------------------------- trace-ray
    auto* cmd_tr = app.add_subcommand("trace-ray", "trace a periodic bubble ray as JSON");
    add_rot(cmd_tr, 4);
    std::string tr_family = "q";
    std::string tr_c = "1,0";
    std::string tr_pattern = "1";
    int tr_depth = 200;
    double tr_tail_tol = 1e-6;
    int tr_terms = 200;
    int tr_samples = 2000;
    std::string tr_out;
    cmd_tr->add_option("--family", tr_family, "map family: q or cubic")->capture_default_str();
    cmd_tr->add_option("--c", tr_c, "cubic parameter re,im")->capture_default_str();
    cmd_tr->add_option("--pattern", tr_pattern,
                       "address increment pattern, comma-separated positive integers")
        ->capture_default_str();
    cmd_tr->add_option("--depth", tr_depth, "bubble chain depth cap")->capture_default_str();
    cmd_tr->add_option("--tail-tol", tr_tail_tol, "tail diameter convergence tolerance")
        ->capture_default_str();
    cmd_tr->add_option("--terms", tr_terms, "series terms")->capture_default_str();
    cmd_tr->add_option("--samples", tr_samples, "boundary orbit samples")->capture_default_str();
    cmd_tr->add_option("--out", tr_out, "output JSON path (default: stdout)");

    // ------------------------------------------------------------------- phi
    auto* cmd_phi = app.add_subcommand("phi", "parameter map value at c as JSON");
    add_rot(cmd_phi, 5);
    std::string phi_c;
    PhiOptions phi_defaults;
    int phi_max_gen = phi_defaults.max_gen;
    double phi_min_diam = phi_defaults.min_diam;
    int phi_terms = phi_defaults.series_terms;
    int phi_samples = phi_defaults.orbit_samples;
    std::string phi_out;
    cmd_phi->add_option("--c", phi_c, "cubic parameter re,im")->required();
    cmd_phi->add_option("--max-gen", phi_max_gen, "bubble generation budget")
        ->capture_default_str();
    cmd_phi->add_option("--min-diam", phi_min_diam, "smallest bubble diameter")
        ->capture_default_str();
    cmd_phi->add_option("--terms", phi_terms, "series terms")->capture_default_str();
    cmd_phi->add_option("--samples", phi_samples, "boundary orbit samples")
        ->capture_default_str();
    cmd_phi->add_option("--out", phi_out, "output JSON path (default: stdout)");

    // -------------------------------------------------------------- pi-orbit
    auto* cmd_po = app.add_subcommand("pi-orbit", "angle-shift orbit of a multi-angle");
    std::string po_ma;
    cmd_po->add_option("--ma", po_ma, "multi-angle as a JSON array, e.g. [0,0,1]")->required();

    // ------------------------------------------------------------ validate-ma
    auto* cmd_vm = app.add_subcommand("validate-ma", "check multi-angle legality");
    std::string vm_ma;
    cmd_vm->add_option("--ma", vm_ma, "multi-angle as a JSON array, e.g. [0,0,1]")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // all flag-level failures are usage errors
    }

    try {
        if (app.got_subcommand(cmd_rp)) {
            RenderConfig cfg = rp_flags.config();
            RotationNumber rot = resolve_rotation(rots[0].rot, rots[0].cf);
            if (rp_plane != "a" && rp_plane != "c")
                throw UsageError("--plane: expected 'a' or 'c', got '" + rp_plane + "'");
            json opts = rp_flags.echo(cfg);
            opts["rot"] = rot.describe();
            opts["plane"] = rp_plane;
            opts["out"] = rp_out;
            echo_config("render-param", opts);
            const auto plane =
                rp_plane == "a" ? ParameterPlane::a_plane : ParameterPlane::c_plane;
            Raster raster = render_parameter_plane(rot, plane, cfg);
            atomic_write_ppm(raster, rp_out);
        } else if (app.got_subcommand(cmd_rd)) {
            RenderConfig cfg = rd_flags.config();
            RotationNumber rot = resolve_rotation(rots[1].rot, rots[1].cf);
            for (const std::string& ov : rd_overlays) {
                if (ov == "siegel") {
                    cfg.overlay_siegel = true;
                } else if (ov.rfind("bubbles:", 0) == 0) {
                    try {
                        cfg.overlay_bubbles_to_gen = std::stoi(ov.substr(8));
                    } catch (const std::exception&) {
                        throw UsageError("--overlay: bad generation in '" + ov + "'");
                    }
                } else {
                    throw UsageError("--overlay: expected 'siegel' or 'bubbles:G', got '" + ov +
                                     "'");
                }
            }
            json opts = rd_flags.echo(cfg);
            opts["rot"] = rot.describe();
            opts["family"] = rd_family;
            opts["overlay_siegel"] = cfg.overlay_siegel;
            opts["overlay_bubbles_to_gen"] = cfg.overlay_bubbles_to_gen;
            opts["out"] = rd_out;

            PolyMap map{};
            bool marked = false;  // true when critical point 1 samples the boundary
            if (rd_family == "q") {
                map = QuadraticMap(rot).poly();
                marked = true;
            } else if (rd_family == "cubic") {
                const cplx c = parse_complex(rd_c, "--c");
                opts["c"] = complex_json(c);
                map = CubicMap(rot.multiplier(), c).poly();
                marked = true;
            } else if (rd_family == "figone") {
                const cplx a = parse_complex(rd_a, "--a");
                opts["a"] = complex_json(a);
                map = FigOneMap(rot.multiplier(), a).poly();
            } else if (rd_family == "blaschke") {
                echo_config("render-dyn", opts);
                throw std::domain_error("only polynomial families can be rendered");
            } else {
                throw UsageError("--family: expected q, cubic, or figone, got '" + rd_family +
                                 "'");
            }
            echo_config("render-dyn", opts);

            const bool wants_overlay = cfg.overlay_siegel || cfg.overlay_bubbles_to_gen >= 1;
            if (wants_overlay && !marked)
                throw std::domain_error(
                    "overlays need a marked boundary critical point: use family q or cubic");
            std::optional<SiegelModel> model;
            std::optional<BubbleTree> tree;
            if (wants_overlay) {
                model.emplace(map, rot, cplx{1.0, 0.0});
                if (cfg.overlay_bubbles_to_gen >= 1) tree.emplace(*model);
            }
            Raster raster = render_dynamical_plane(map, cfg, model ? &*model : nullptr,
                                                   tree ? &*tree : nullptr);
            atomic_write_ppm(raster, rd_out);
        } else if (app.got_subcommand(cmd_ss)) {
            RotationNumber rot = resolve_rotation(rots[2].rot, rots[2].cf);
            json opts{{"rot", rot.describe()}, {"family", ss_family}, {"terms", ss_terms},
                      {"samples", ss_samples}, {"out", ss_out},       {"csv", ss_csv}};
            PolyMap map{};
            if (ss_family == "q") {
                map = QuadraticMap(rot).poly();
            } else if (ss_family == "cubic") {
                const cplx c = parse_complex(ss_c, "--c");
                opts["c"] = complex_json(c);
                map = CubicMap(rot.multiplier(), c).poly();
            } else {
                throw UsageError("--family: expected q or cubic, got '" + ss_family + "'");
            }
            echo_config("siegel-series", opts);

            SiegelModel model(map, rot, cplx{1.0, 0.0}, ss_terms, ss_samples);
            json j;
            j["version"] = kVersion;
            j["rot"] = rot.describe();
            j["theta"] = rot.value();
            j["lambda"] = complex_json(map.lambda);
            j["family"] = ss_family;
            if (ss_family == "cubic") j["c"] = opts["c"];
            j["terms"] = ss_terms;
            j["orbit_samples"] = ss_samples;
            json coeffs = json::array();
            for (cplx b : model.coefficients()) coeffs.push_back(complex_json(b));
            j["coefficients"] = coeffs;
            j["conformal_radius"] =
                model.is_rigid_rotation() ? json(nullptr) : json(model.conformal_radius());
            j["radius_low_confidence"] = model.radius_low_confidence();
            j["min_boundary_distance"] = model.min_boundary_distance();
            j["defect_at_half_radius"] = linearization_defect(model, 0.5, 64);
            emit_json(j, ss_out);

            if (!ss_csv.empty()) {
                std::vector<BoundarySample> rows = model.boundary();
                std::sort(rows.begin(), rows.end(),
                          [](const BoundarySample& a, const BoundarySample& b) {
                              return a.k < b.k;
                          });
                std::ostringstream csv;
                csv << "k,angle,re,im\n";
                csv.precision(17);
                for (const auto& s : rows)
                    csv << s.k << ',' << s.angle << ',' << s.point.real() << ','
                        << s.point.imag() << '\n';
                atomic_write_text(ss_csv, csv.str());
            }
        } else if (app.got_subcommand(cmd_bt)) {
            RotationNumber rot = resolve_rotation(rots[3].rot, rots[3].cf);
            json opts{{"rot", rot.describe()},       {"family", bt_family},
                      {"max_gen", bt_max_gen},       {"min_diam", bt_min_diam},
                      {"terms", bt_terms},           {"samples", bt_samples},
                      {"out", bt_out}};
            PolyMap map{};
            if (bt_family == "q") {
                map = QuadraticMap(rot).poly();
            } else if (bt_family == "cubic") {
                const cplx c = parse_complex(bt_c, "--c");
                opts["c"] = complex_json(c);
                map = CubicMap(rot.multiplier(), c).poly();
            } else {
                throw UsageError("--family: expected q or cubic, got '" + bt_family + "'");
            }
            echo_config("bubble-tree", opts);

            SiegelModel model(map, rot, cplx{1.0, 0.0}, bt_terms, bt_samples);
            BubbleTree tree(std::move(model));
            tree.build(bt_max_gen, bt_min_diam);
            json nodes = json::array();
            for (const Bubble* b : tree.nodes(bt_min_diam)) {
                json n;
                n["address"] = b->address;
                n["generation"] = b->generation;
                n["root"] = complex_json(b->root);
                n["center"] = b->center ? complex_json(*b->center) : json(nullptr);
                n["kind"] = kind_name(b->kind);
                n["diameter"] = b->diameter;
                n["parent"] = b->parent;
                n["image"] = b->image;
                json boundary = json::array();
                for (const BoundaryVertex& v : b->boundary)
                    boundary.push_back(json::array({v.param, v.point.real(), v.point.imag()}));
                n["boundary"] = boundary;
                nodes.push_back(std::move(n));
            }
            json j{{"version", kVersion}, {"rot", rot.describe()}, {"family", bt_family},
                   {"max_gen", bt_max_gen}, {"min_diam", bt_min_diam}, {"nodes", nodes}};
            if (bt_family == "cubic") j["c"] = opts["c"];
            emit_json(j, bt_out);
        } else if (app.got_subcommand(cmd_tr)) {
            RotationNumber rot = resolve_rotation(rots[4].rot, rots[4].cf);
            const std::vector<std::int64_t> pattern = parse_pattern(tr_pattern);
            json opts{{"rot", rot.describe()},   {"family", tr_family},
                      {"pattern", pattern},      {"depth", tr_depth},
                      {"tail_tol", tr_tail_tol}, {"terms", tr_terms},
                      {"samples", tr_samples},   {"out", tr_out}};
            PolyMap map{};
            if (tr_family == "q") {
                map = QuadraticMap(rot).poly();
            } else if (tr_family == "cubic") {
                const cplx c = parse_complex(tr_c, "--c");
                opts["c"] = complex_json(c);
                map = CubicMap(rot.multiplier(), c).poly();
            } else {
                throw UsageError("--family: expected q or cubic, got '" + tr_family + "'");
            }
            echo_config("trace-ray", opts);

            SiegelModel model(map, rot, cplx{1.0, 0.0}, tr_terms, tr_samples);
            BubbleTree tree(std::move(model));
            BubbleRay ray = tree.trace_ray(pattern, tr_depth, tr_tail_tol);
            json j;
            j["version"] = kVersion;
            j["pattern"] = ray.pattern;
            j["period"] = ray.period;
            j["chain"] = ray.chain;
            j["landing"] = complex_json(ray.landing_estimate);
            j["tail_diameter"] = ray.tail_diameter;
            j["landing_residual"] = ray.landing_residual;
            j["multiplier_modulus"] = ray.multiplier_modulus;
            j["resolved"] = ray.resolved;
            emit_json(j, tr_out);
        } else if (app.got_subcommand(cmd_phi)) {
            RotationNumber rot = resolve_rotation(rots[5].rot, rots[5].cf);
            const cplx c = parse_complex(phi_c, "--c");
            json opts{{"rot", rot.describe()},   {"c", complex_json(c)},
                      {"max_gen", phi_max_gen},  {"min_diam", phi_min_diam},
                      {"terms", phi_terms},      {"samples", phi_samples},
                      {"out", phi_out}};
            echo_config("phi", opts);

            PhiOptions popts;
            popts.max_gen = phi_max_gen;
            popts.min_diam = phi_min_diam;
            popts.series_terms = phi_terms;
            popts.orbit_samples = phi_samples;
            BubbleTree q_tree = make_quadratic_tree(rot, phi_terms, phi_samples);
            ModelPoint mp = phi(q_tree, rot, c, popts);
            json j = model_point_json(q_tree, mp);
            j["version"] = kVersion;
            emit_json(j, phi_out);
        } else if (app.got_subcommand(cmd_po)) {
            const MultiAngle ma = parse_ma(po_ma);
            echo_config("pi-orbit", json{{"ma", ma}});
            validate_multiangle(ma);
            std::cout << json(pi_orbit(ma)).dump() << "\n";
        } else if (app.got_subcommand(cmd_vm)) {
            const MultiAngle ma = parse_ma(vm_ma);
            echo_config("validate-ma", json{{"ma", ma}});
            if (const auto v = check_multiangle(ma)) {
                std::cout << json{{"legal", false}, {"index", v->index},
                                  {"message", v->message}}
                                 .dump()
                          << "\n";
                std::cerr << "error: illegal multi-angle at index " << v->index << ": "
                          << v->message << "\n";
                return 2;
            }
            std::cout << json{{"legal", true}}.dump() << "\n";
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
