#pragma once

#include <functional>
#include <vector>

#include "sdyn/common.hpp"
#include "sdyn/rotation.hpp"

namespace sdyn {

// All three polynomial families fix 0 with multiplier lambda and share the
// shape f(z) = lambda*z + a2*z^2 + a3*z^3. Specific families below carry
// their natural parameters and expose this common view.
struct PolyMap {
    cplx lambda;
    cplx a2;
    cplx a3;  // zero for the quadratic family

    int degree() const { return a3 == cplx(0.0) ? 2 : 3; }
    cplx eval(cplx z) const { return ((a3 * z + a2) * z + lambda) * z; }
    cplx deriv(cplx z) const { return (3.0 * a3 * z + 2.0 * a2) * z + lambda; }
    cplx iterate(cplx z, int n) const {
        for (int i = 0; i < n; ++i) z = eval(z);
        return z;
    }
};

// q(z) = lambda * z * (1 - z/2); critical point 1, critical value lambda/2.
struct QuadraticMap {
    cplx lambda;
    explicit QuadraticMap(cplx lam) : lambda(lam) {}
    explicit QuadraticMap(const RotationNumber& rot) : lambda(rot.multiplier()) {}
    PolyMap poly() const { return {lambda, -lambda / 2.0, cplx(0.0)}; }
};

// p_c(z) = lambda * z * (1 - (1 + 1/c) z / 2 + z^2 / (3c)); critical points 1 and c.
struct CubicMap {
    cplx lambda;
    cplx c;
    CubicMap(cplx lam, cplx cc);
    PolyMap poly() const {
        return {lambda, -lambda * (1.0 + 1.0 / c) / 2.0, lambda / (3.0 * c)};
    }
};

// f(z) = lambda*z + sqrt(a)*z^2 + z^3 with the principal square root branch.
struct FigOneMap {
    cplx lambda;
    cplx a;
    FigOneMap(cplx lam, cplx aa) : lambda(lam), a(aa) {}
    PolyMap poly() const { return {lambda, std::sqrt(a), cplx(1.0)}; }
};

// Critical points of the common polynomial view (roots of f'), degree-1 list
// for the quadratic family, degree-2 list otherwise.
std::vector<cplx> critical_points(const PolyMap& f);

// All solutions of f(z) = w, count = degree with multiplicity. Closed forms
// plus a Newton polish; a Durand-Kerner sweep backs up ill-conditioned cases.
std::vector<cplx> preimages(const PolyMap& f, cplx w);

struct EscapeResult {
    bool escaped;
    int iterations;  // first n >= 0 with |z_n| > radius; z_0 already outside counts as 0
};

// Iterate z0 up to max_iter times. radius must be >= 4 (beyond it all these
// families escape monotonically), max_iter >= 1.
EscapeResult escape_time(const PolyMap& f, cplx z0, double radius, int max_iter);

// Linear conjugacy data between p_c and p_{1/c}: A(z) = z * scale satisfies
// A(p_c(z)) = p_{1/c}(A(z)).
struct ConjugateParameter {
    cplx c_out;   // 1/c
    cplx scale;   // 1/c
    double residual;  // max |A(p_c(z)) - p_{1/c}(A(z))| over sample points
};
ConjugateParameter conjugate_parameter(cplx lambda, cplx c);

// Normalized cubic with the same unmarked class as f(z)=lambda z+sqrt a z^2+z^3:
// the critical points u, v of f rescale to {1, v/u}. Returns c = v/u (the
// involution partner 1/c = u/v is equally valid). Double critical points
// (a = 3 lambda) map to c = 1.
struct FigOneToCubic {
    cplx c;
    cplx scale;       // conjugacy A(z) = scale*z with A o f = p_c o A
    double residual;  // conjugacy defect sampled on a disk
};
FigOneToCubic figone_to_cubic(const FigOneMap& f);

// Inverse bridge: the a-plane class of p_c, a = (3 lambda / 4)(c + 2 + 1/c);
// invariant under c -> 1/c.
cplx cubic_to_figone(cplx lambda, cplx c);

// Degree-1 Blaschke fraction B(z) = e^{2 pi i t} z^3 ((z-p)/(1-conj(p)z)) ((z-q)/(1-conj(q)z))
// with |p|, |q| > 1; restricts to a degree-1 circle map.
struct BlaschkeFraction {
    double t;  // rotation parameter in turns
    cplx p;
    cplx q;
    BlaschkeFraction(double tt, cplx pp, cplx qq);
    cplx eval(cplx z) const;
    // Circle action in turn coordinates: x in [0,1) -> B(e^{2 pi i x}) angle.
    double circle_image(double x) const;
};

// Rotation number of the circle restriction via a weighted Birkhoff average
// of lift displacements; the displacement branch is pinned by a one-time
// unwrapped grid of the lift. Exact (to rounding) for rigid rotations.
double circle_rotation_number(const BlaschkeFraction& B, int iters = 20000);

// Same estimator for an arbitrary degree-1 circle map given in turn
// coordinates (x in [0,1) -> image in [0,1)).
double circle_rotation_number(const std::function<double(double)>& map_turns,
                              int iters = 20000);

// Bisection on t so that the circle rotation number of B_{t,p,q} hits the
// target. Returns the tuned t in [0,1).
double tune_blaschke_parameter(cplx p, cplx q, double target_theta,
                               double tol = 1e-10, int iters = 20000);

}  // namespace sdyn
