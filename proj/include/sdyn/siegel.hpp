#pragma once

#include <optional>
#include <vector>

#include "sdyn/common.hpp"
#include "sdyn/dynamics.hpp"
#include "sdyn/rotation.hpp"

namespace sdyn {

// Polar coordinates of a point of the closed Siegel disk: radius normalized
// so the boundary is 1, angle in turns. The angle is undefined at the center.
struct PolarPoint {
    double rho;
    std::optional<double> angle;
    double residual;  // inversion defect |psi(w) - z|, 0 for exact boundary samples
};

struct BoundarySample {
    double angle;  // conformal angle k*theta mod 1
    cplx point;    // k-th iterate of the boundary critical point
    int k;
};

// Numerical model of the Siegel disk of a polynomial with a neutral fixed
// point at 0: truncated linearization series (interior normalization b1 = 1),
// conformal radius estimate, and the boundary critical orbit.
class SiegelModel {
public:
    // `boundary_crit` is the critical point lying on the disk boundary whose
    // orbit samples it (1 for the quadratic family and for cubics whose
    // marked critical point sits on the boundary).
    SiegelModel(PolyMap map, const RotationNumber& rot, cplx boundary_crit,
                int series_terms = 200, int orbit_samples = 2000);

    const PolyMap& map() const { return map_; }
    const RotationNumber& rotation() const { return rot_; }
    double theta() const { return rot_.value(); }

    // Linearization coefficients b_1..b_N, b_1 = 1: psi(lambda w) = f(psi(w)).
    const std::vector<cplx>& coefficients() const { return coeffs_; }

    // Conformal radius estimate r of the disk in the b1 = 1 normalization
    // (infinity for rigid rotations). low_confidence flags a large mismatch
    // against the minimum boundary-sample distance cross-check.
    double conformal_radius() const { return radius_; }
    bool radius_low_confidence() const { return radius_low_confidence_; }
    bool is_rigid_rotation() const { return rigid_; }

    // Boundary orbit samples sorted by conformal angle. Throws
    // std::domain_error at construction if the orbit escapes |z| >= 10
    // (non-membership signal for the claimed boundary critical point).
    const std::vector<BoundarySample>& boundary() const { return boundary_; }

    // Interior series evaluation at |w| <= trust_rho() * conformal_radius().
    cplx psi(cplx w) const;
    cplx psi_deriv(cplx w) const;

    // Point of the closed disk at normalized polar coordinates: series for
    // rho <= trust_rho(), boundary polygon at rho = 1, radial blend between.
    cplx point_at(double rho, double angle_turns) const;

    // Boundary polygon interpolated at a conformal angle (turns).
    cplx boundary_point(double angle_turns) const;

    // Conformal angle of a point assumed to lie near the boundary polygon,
    // via nearest-segment projection; distance to the polygon is returned.
    // `gap` is the chord length of the matched segment: the polygon cannot
    // resolve the true curve finer than this, and near boundary corners
    // (critical points) the true curve bulges outward by a comparable amount.
    struct BoundaryLocation {
        double angle;
        double distance;
        double gap;
    };
    BoundaryLocation locate_on_boundary(cplx z) const;

    // Invert the series: normalized polar coordinates of an interior point.
    // Residual-checked Newton; returns nullopt when no trusted-interior
    // solution is found (point outside, or in the untrusted collar).
    std::optional<PolarPoint> polar(cplx z) const;

    // Winding test against the boundary polygon. Points within `band` of the
    // polygon are indeterminate (nullopt).
    std::optional<bool> contains(cplx z, double band = 1e-6) const;

    // Radius below that the truncated series is trusted.
    static constexpr double trust_rho() { return 0.9; }

    // Phase sigma aligning the interior normalization with the boundary
    // parameterization: boundary-normalized psi_bar(w) = psi(r * e^{2 pi i sigma} * w).
    // Accurate only to the boundary-polygon resolution; used for seeding, not
    // for toleranced results.
    double boundary_phase() const { return sigma_; }

    // Min |boundary sample| (distance cross-check for the conformal radius).
    double min_boundary_distance() const { return min_boundary_dist_; }

private:
    PolyMap map_;
    RotationNumber rot_;
    cplx boundary_crit_;
    std::vector<cplx> coeffs_;
    std::vector<BoundarySample> boundary_;
    double radius_ = 0.0;
    bool radius_low_confidence_ = false;
    bool rigid_ = false;
    double sigma_ = 0.0;
    double min_boundary_dist_ = 0.0;
    std::vector<cplx> seeds_;       // Newton seed table psi(seed_w)
    std::vector<cplx> seed_ws_;
};

// Linearization coefficients alone (b_1 = 1). Exposed separately so the
// series can be inspected without boundary data, e.g. for rigid rotations.
std::vector<cplx> linearization_series(const PolyMap& map, int terms);

// Max functional-equation defect |psi(lambda w) - f(psi(w))| over `samples`
// points of the circle |w| = rho_fraction * conformal radius. A residual
// diagnostic for the truncated series; rho_fraction must lie in (0, trust_rho].
double linearization_defect(const SiegelModel& model, double rho_fraction = 0.5,
                            int samples = 64);

// Least-squares conformal radius estimate from the coefficient tail,
// infinity when the tail vanishes (rigid rotation).
double conformal_radius_estimate(const std::vector<cplx>& coeffs);

}  // namespace sdyn
