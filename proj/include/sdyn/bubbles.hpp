#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "sdyn/common.hpp"
#include "sdyn/multiangle.hpp"
#include "sdyn/siegel.hpp"

namespace sdyn {

// Boundary polyline vertex. The parameter of a vertex v of a generation-g
// bubble is the conformal angle of f^g(v) on the Siegel boundary; parameters
// transport unchanged under f, and every polyline keeps a vertex at parameter
// theta (the image of the bubble's root).
struct BoundaryVertex {
    double param;
    cplx point;
};

enum class BubbleKind { siegel_disk, off_critical, critical, precritical };

struct Bubble {
    MultiAngle address;        // root multi-angle; empty for the Siegel disk
    int generation = 0;        // 0 for the disk; otherwise address.back() + 1
    cplx root;                 // boundary critical point for the disk
    std::optional<cplx> center;
    std::vector<BoundaryVertex> boundary;  // sorted by param
    MultiAngle parent;         // attach parent address (empty = the disk)
    MultiAngle image;          // address of the image bubble under f
    BubbleKind kind = BubbleKind::off_critical;
    double diameter = 0.0;
    // Critical case only: the two branches of the pulled-back special
    // segment, each running from the enclosed critical point to the boundary.
    std::vector<std::vector<cplx>> separatrices;

    // Polyline interpolation at a parameter (cyclic, by-parameter linear).
    cplx boundary_at(double param) const;
    bool winding_contains(cplx z) const;
    double boundary_distance(cplx z) const;
};

struct BubbleRay {
    std::vector<MultiAngle> chain;     // addresses of the traced chain bubbles
    std::vector<std::int64_t> pattern; // increment pattern of the address stream
    int period = 0;                    // angle-shift period (sum of pattern)
    cplx landing_estimate{0.0, 0.0};
    double tail_diameter = 0.0;
    double landing_residual = 0.0;     // |f^period(x) - x| after polish
    double multiplier_modulus = 0.0;   // |(f^period)'(x)|
    bool resolved = false;
};

// Lazily built tree of legal bubbles over a Siegel model. Bubbles are
// constructed address-by-address as branch-continued pullbacks of their
// image bubbles; results are memoized.
class BubbleTree {
public:
    // `crit_address` optionally names the bubble address of the second
    // critical point and filters legality (cubic trees); absent for the
    // quadratic family.
    explicit BubbleTree(SiegelModel model,
                        std::optional<MultiAngle> crit_address = std::nullopt);

    const SiegelModel& model() const { return *model_; }
    const Bubble& disk() const { return *disk_; }

    // Construct (or fetch) the bubble with the given odd-length legal address.
    const Bubble& ensure(const MultiAngle& address);
    const Bubble* find(const MultiAngle& address) const;

    // Construct every legal bubble of generation <= max_gen (max_gen <= 12).
    void build(int max_gen, double min_diam);

    // All constructed bubbles including the disk, generation-then-address
    // order, filtered by diameter (the disk always passes).
    std::vector<const Bubble*> nodes(double min_diam = 0.0) const;

    // Boundary point of `parent` whose generation(parent)-th forward image is
    // the Siegel-boundary point of conformal angle -m*theta. Computed by
    // exact stepwise inverse steps seeded from the stored polylines.
    cplx attach_point(const MultiAngle& parent_address, std::int64_t m);

    // Point of the addressed bubble at own polar coordinates (rho, angle in
    // turns): the stepwise pullback of the Siegel-disk point at the
    // transported angle. rho = 1 falls back to boundary interpolation.
    cplx bubble_point(const MultiAngle& address, double rho, double own_angle_turns);

    // Chain of bubbles traversed by the legal arc to the points addressed by
    // `point_address` (odd or even length): the disk first, then the bubbles
    // at odd prefixes below the address's own length.
    std::vector<const Bubble*> chain(const MultiAngle& point_address);

    // Trace the bubble ray whose address stream repeats the given increment
    // pattern (pair values e_0 = 0, e_{i+1} = e_i + pattern[i mod n]), then
    // Newton-polish the landing point of period = sum(pattern).
    BubbleRay trace_ray(const std::vector<std::int64_t>& pattern, int max_depth = 200,
                        double tail_tol = 1e-6);

    const std::optional<MultiAngle>& crit_address() const { return crit_address_; }

private:
    const Bubble& build_address(const MultiAngle& address);
    Bubble trace_pullback(const Bubble& image, cplx start_preimage, bool image_is_disk);
    cplx delta_boundary_legal_point(std::int64_t m);  // x_m by stepwise pullback
    void finish_bubble(Bubble& b);

    std::shared_ptr<const SiegelModel> model_;
    std::optional<MultiAngle> crit_address_;
    std::unique_ptr<Bubble> disk_;
    std::map<MultiAngle, std::unique_ptr<Bubble>> bubbles_;
    std::map<std::int64_t, cplx> legal_points_;  // x_m cache
};

}  // namespace sdyn
