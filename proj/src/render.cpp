#include "sdyn/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace sdyn {

namespace {

Rgb palette_color(const std::map<std::string, Rgb>& palette, const std::string& name) {
    const auto it = palette.find(name);
    if (it == palette.end()) throw std::invalid_argument("palette entry missing: " + name);
    return it->second;
}

// Integer ramp between two palette entries by escape iteration; pure integer
// arithmetic keeps the bytes identical across platforms.
Rgb escape_shade(const RenderConfig& cfg, int iter) {
    const Rgb fast = palette_color(cfg.palette, "escape_fast");
    const Rgb slow = palette_color(cfg.palette, "escape_slow");
    Rgb out;
    const long n = std::clamp(iter, 0, cfg.max_iter);
    for (int ch = 0; ch < 3; ++ch) {
        const long f = fast[std::size_t(ch)];
        const long s = slow[std::size_t(ch)];
        out[std::size_t(ch)] = std::uint8_t(f + ((s - f) * n) / cfg.max_iter);
    }
    return out;
}

void run_rows(const RenderConfig& cfg, Raster& raster,
              const std::function<Rgb(cplx)>& classify) {
    const int h = cfg.height_px;
    int nthreads = cfg.threads > 0 ? cfg.threads : int(std::thread::hardware_concurrency());
    nthreads = std::clamp(nthreads, 1, 64);
    nthreads = std::min(nthreads, h);
    auto worker = [&](int row_begin, int row_end) {
        for (int row = row_begin; row < row_end; ++row)
            for (int col = 0; col < cfg.width_px; ++col)
                raster.set(row, col, classify(cfg.pixel_center(row, col)));
    };
    if (nthreads == 1) {
        worker(0, h);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(nthreads));
    for (int t = 0; t < nthreads; ++t) {
        const int lo = (h * t) / nthreads;
        const int hi = (h * (t + 1)) / nthreads;
        pool.emplace_back(worker, lo, hi);
    }
    for (std::thread& th : pool) th.join();
}

void draw_polyline(Raster& raster, const RenderConfig& cfg, const std::vector<cplx>& pts,
                   bool closed, Rgb color) {
    if (pts.size() < 2) return;
    const double sx = double(cfg.width_px) / cfg.width;
    const double sy = double(cfg.height_px) / cfg.height;
    auto to_pixel = [&](cplx z, double& px, double& py) {
        px = (z.real() - cfg.center.real()) * sx + cfg.width_px / 2.0;
        py = cfg.height_px / 2.0 - (z.imag() - cfg.center.imag()) * sy;
    };
    const std::size_t n = pts.size();
    const std::size_t segs = closed ? n : n - 1;
    for (std::size_t i = 0; i < segs; ++i) {
        const cplx a = pts[i];
        const cplx b = pts[(i + 1) % n];
        double ax, ay, bx, by;
        to_pixel(a, ax, ay);
        to_pixel(b, bx, by);
        const int steps = 1 + int(std::min(4096.0, std::ceil(std::max(std::abs(bx - ax), std::abs(by - ay)))));
        for (int s = 0; s <= steps; ++s) {
            const double t = double(s) / steps;
            const int col = int(std::floor(ax + (bx - ax) * t));
            const int row = int(std::floor(ay + (by - ay) * t));
            if (row >= 0 && row < raster.height_px && col >= 0 && col < raster.width_px)
                raster.set(row, col, color);
        }
    }
}

std::string config_echo(const RenderConfig& cfg, const std::string& what) {
    std::ostringstream os;
    os.precision(17);
    os << kVersion << " " << what << " center=" << cfg.center.real() << ","
       << cfg.center.imag() << " width=" << cfg.width << " height=" << cfg.height
       << " res=" << cfg.width_px << "x" << cfg.height_px << " max_iter=" << cfg.max_iter
       << " escape_radius=" << cfg.escape_radius;
    return os.str();
}

}  // namespace

std::map<std::string, Rgb> RenderConfig::default_palette() {
    return {
        {"escape_fast", {255, 255, 255}}, {"escape_slow", {0, 0, 0}},
        {"bounded", {235, 235, 235}},     {"sentinel", {255, 0, 255}},
        {"siegel", {200, 30, 30}},        {"bubble0", {30, 90, 200}},
        {"bubble1", {30, 160, 60}},       {"bubble2", {210, 140, 20}},
        {"bubble3", {150, 60, 190}},      {"bubble4", {0, 150, 160}},
        {"bubble5", {190, 190, 40}},
    };
}

void RenderConfig::validate() const {
    if (width_px < 16 || height_px < 16)
        throw std::invalid_argument("resolution must be at least 16x16");
    if (!(width > 0.0) || !(height > 0.0))
        throw std::invalid_argument("viewport extents must be positive");
    if (escape_radius < 4.0) throw std::invalid_argument("escape radius must be >= 4");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
}

cplx RenderConfig::pixel_center(int row, int col) const {
    const double x = center.real() + (col + 0.5 - width_px / 2.0) * (width / width_px);
    const double y = center.imag() + (height_px / 2.0 - row - 0.5) * (height / height_px);
    return {x, y};
}

Rgb Raster::get(int row, int col) const {
    const std::size_t i = 3 * (std::size_t(row) * std::size_t(width_px) + std::size_t(col));
    return {pixels[i], pixels[i + 1], pixels[i + 2]};
}

void Raster::set(int row, int col, Rgb c) {
    const std::size_t i = 3 * (std::size_t(row) * std::size_t(width_px) + std::size_t(col));
    pixels[i] = c[0];
    pixels[i + 1] = c[1];
    pixels[i + 2] = c[2];
}

Raster render_parameter_plane(const RotationNumber& rot, ParameterPlane plane,
                              const RenderConfig& cfg) {
    cfg.validate();
    Raster raster;
    raster.width_px = cfg.width_px;
    raster.height_px = cfg.height_px;
    raster.pixels.assign(3 * std::size_t(cfg.width_px) * std::size_t(cfg.height_px), 0);
    raster.meta = config_echo(cfg, plane == ParameterPlane::a_plane
                                       ? "parameter-plane=a rot=" + rot.describe()
                                       : "parameter-plane=c rot=" + rot.describe());

    const cplx lambda = rot.multiplier();
    const Rgb bounded = palette_color(cfg.palette, "bounded");
    const Rgb sentinel = palette_color(cfg.palette, "sentinel");

    auto classify = [&](cplx p) -> Rgb {
        PolyMap f;
        std::vector<cplx> orbits;
        if (plane == ParameterPlane::a_plane) {
            f = FigOneMap(lambda, p).poly();
            orbits = critical_points(f);
        } else {
            if (p == cplx{0.0, 0.0}) return sentinel;
            f = CubicMap(lambda, p).poly();
            orbits = {p};
        }
        int first_escape = -1;
        for (cplx z0 : orbits) {
            const EscapeResult r = escape_time(f, z0, cfg.escape_radius, cfg.max_iter);
            if (r.escaped && (first_escape < 0 || r.iterations < first_escape))
                first_escape = r.iterations;
        }
        if (first_escape < 0) return bounded;
        return escape_shade(cfg, first_escape);
    };
    run_rows(cfg, raster, classify);
    return raster;
}

Raster render_dynamical_plane(const PolyMap& map, const RenderConfig& cfg,
                              const SiegelModel* model, BubbleTree* tree) {
    cfg.validate();
    if (map.a2 == cplx{0.0, 0.0} && map.a3 == cplx{0.0, 0.0})
        throw std::invalid_argument(
            "dynamical renders need a polynomial family, not a rigid rotation");
    Raster raster;
    raster.width_px = cfg.width_px;
    raster.height_px = cfg.height_px;
    raster.pixels.assign(3 * std::size_t(cfg.width_px) * std::size_t(cfg.height_px), 0);
    raster.meta = config_echo(cfg, "dynamical-plane");

    const Rgb bounded = palette_color(cfg.palette, "bounded");
    auto classify = [&](cplx z0) -> Rgb {
        const EscapeResult r = escape_time(map, z0, cfg.escape_radius, cfg.max_iter);
        return r.escaped ? escape_shade(cfg, r.iterations) : bounded;
    };
    run_rows(cfg, raster, classify);

    if (cfg.overlay_siegel) {
        const SiegelModel* m = model ? model : (tree ? &tree->model() : nullptr);
        if (!m)
            throw std::invalid_argument("siegel overlay requested without a model or tree");
        std::vector<cplx> pts;
        pts.reserve(m->boundary().size());
        for (const BoundarySample& s : m->boundary()) pts.push_back(s.point);
        draw_polyline(raster, cfg, pts, true, palette_color(cfg.palette, "siegel"));
    }
    if (cfg.overlay_bubbles_to_gen >= 1) {
        if (!tree) throw std::invalid_argument("bubble overlay requested without a tree");
        tree->build(std::min(cfg.overlay_bubbles_to_gen, 12), 0.0);
        for (const Bubble* b : tree->nodes()) {
            if (b->generation < 1 || b->generation > cfg.overlay_bubbles_to_gen) continue;
            std::vector<cplx> pts;
            pts.reserve(b->boundary.size());
            for (const BoundaryVertex& v : b->boundary) pts.push_back(v.point);
            const std::string name = "bubble" + std::to_string((b->generation - 1) % 6);
            draw_polyline(raster, cfg, pts, true, palette_color(cfg.palette, name));
        }
    }
    return raster;
}

void write_ppm(const Raster& raster, const std::string& path) {
    if (raster.pixels.size() !=
        3 * std::size_t(raster.width_px) * std::size_t(raster.height_px))
        throw std::invalid_argument("raster byte length does not match its resolution");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "P6\n" << raster.width_px << " " << raster.height_px << "\n255\n";
    out.write(reinterpret_cast<const char*>(raster.pixels.data()),
              std::streamsize(raster.pixels.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace sdyn
