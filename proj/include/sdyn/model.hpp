#pragma once

#include <limits>
#include <optional>
#include <string>

#include "sdyn/bubbles.hpp"
#include "sdyn/rotation.hpp"

namespace sdyn {

// Sentinel polar radius for truncated / infinite addresses.
inline constexpr double RHO_INFINITE = std::numeric_limits<double>::infinity();

// A point of the filled-Julia-set model given by a multi-angle address plus
// polar data. When `angle` is absent, `ma` is a point address: an odd address
// (m0,...,m_{2i}) names the point at radius rho on the ray of angle
// -m_{2i}*theta of the depth-i chain bubble, and an even address names a
// point of the entry ray (the ray landing at the root) of the depth-i chain
// bubble. When `angle` is present, `ma` is the address of the bubble itself
// and (rho, angle) are own polar coordinates in it, used for points whose
// ray is not one of the countably many legal rays.
struct ModelPoint {
    MultiAngle ma;
    double rho = 0.0;
    std::optional<double> angle;  // own-angle in turns, generic rays only
    cplx embedded{0.0, 0.0};
    bool quotient_canonical = false;
    bool resolved = true;
    int depth = 0;  // chain bubbles beyond the Siegel disk
    std::string note;
};

struct LocateOptions {
    double boundary_tol = 1e-6;  // closure-membership distance tolerance
    double rho_snap = 1e-5;      // |rho - 1| within which a point is boundary
    double ray_match_tol = 1e-6; // angular tolerance for legal-ray encoding
    double escape_radius = 6.0;
    int escape_iters = 10000;
    std::int64_t max_ray_index = 512;
};

// Address and polar data of z within the tree's map: the Siegel closure
// first, then built bubbles (deepest first), else a truncated separating
// prefix. Escaping points raise domain_error. `embedded` is z itself.
ModelPoint locate_point(BubbleTree& tree, cplx z, const LocateOptions& opts = {});

// The model correspondence: realize the address (ma, rho) as a point of the
// quadratic tree. Unreachable depths yield resolved=false with the deepest
// resolved prefix.
ModelPoint eta_eval(BubbleTree& q_tree, const MultiAngle& ma, double rho);

// Same correspondence applied to a located point (handles generic angles).
ModelPoint eta_transport(BubbleTree& q_tree, const ModelPoint& located);

struct PhiOptions {
    int max_gen = 5;
    double min_diam = 1e-4;
    int series_terms = 160;
    int orbit_samples = 1200;
    double rho_snap = 1e-3;  // boundary snap for the critical parameter
    LocateOptions locate{};
};

// Parameter map: locate the free critical point c in the cubic map's own
// bubble structure, then transport the address into the quadratic tree.
ModelPoint phi(BubbleTree& q_tree, const RotationNumber& rot, cplx c,
               const PhiOptions& opts = {});

// Canonical form under the boundary identification alpha ~ -alpha: points of
// the quadratic Siegel boundary are rewritten with canonical angle
// min(alpha, 1-alpha) in [0, 1/2]; all other points pass through unchanged.
ModelPoint quotient_project(BubbleTree& q_tree, const ModelPoint& mp);

// Distance in canonical quotient coordinates between the projected values of
// phi at c and at 1/c.
double symmetry_residual(BubbleTree& q_tree, const RotationNumber& rot, cplx c,
                         const PhiOptions& opts = {});

// Convenience: quadratic Siegel model + bubble tree for a rotation number.
BubbleTree make_quadratic_tree(const RotationNumber& rot, int series_terms = 200,
                               int orbit_samples = 2000);

}  // namespace sdyn
