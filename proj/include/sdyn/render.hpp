#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sdyn/bubbles.hpp"
#include "sdyn/dynamics.hpp"
#include "sdyn/rotation.hpp"
#include "sdyn/siegel.hpp"

namespace sdyn {

inline constexpr const char* kVersion = "sdyn-0.1.0";

using Rgb = std::array<std::uint8_t, 3>;

// Deterministic rendering configuration: pixel centers are sampled, the
// palette is a named color table, and threads affect speed only, never bytes.
struct RenderConfig {
    cplx center{0.0, 0.0};
    double width = 8.0;
    double height = 8.0;
    int width_px = 512;
    int height_px = 512;
    int max_iter = 1000;
    double escape_radius = 100.0;
    int threads = 0;  // 0 = hardware concurrency
    bool overlay_siegel = false;
    int overlay_bubbles_to_gen = -1;  // -1 = no bubble overlay
    std::map<std::string, Rgb> palette = default_palette();

    static std::map<std::string, Rgb> default_palette();
    void validate() const;  // throws std::invalid_argument
    cplx pixel_center(int row, int col) const;
};

struct Raster {
    int width_px = 0;
    int height_px = 0;
    std::vector<std::uint8_t> pixels;  // row-major RGB, 3*w*h bytes
    std::string meta;                  // config echo + version string

    Rgb get(int row, int col) const;
    void set(int row, int col, Rgb c);
};

enum class ParameterPlane { a_plane, c_plane };

// Escape-time image of a parameter plane. In the a-plane both critical
// orbits are iterated (escape = either escapes) since the unmarked family
// carries no canonical free critical point; in the c-plane the free critical
// point c is iterated. The c = 0 pole gets the sentinel color.
Raster render_parameter_plane(const RotationNumber& rot, ParameterPlane plane,
                              const RenderConfig& cfg);

// Escape-time image of a dynamical plane with optional Siegel-boundary and
// bubble overlays drawn in distinct palette entries. Overlays need `model`
// (or `tree`, whose model is used) and `tree` respectively.
Raster render_dynamical_plane(const PolyMap& map, const RenderConfig& cfg,
                              const SiegelModel* model = nullptr, BubbleTree* tree = nullptr);

// Binary PPM: "P6\n<w> <h>\n255\n" + 3*w*h bytes, nothing else.
void write_ppm(const Raster& raster, const std::string& path);

}  // namespace sdyn
