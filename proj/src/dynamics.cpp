#include "sdyn/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace sdyn {

namespace {

// Numerically stable quadratic roots of a z^2 + b z + c = 0 (a != 0).
std::array<cplx, 2> quadratic_roots(cplx a, cplx b, cplx c) {
    cplx s = std::sqrt(b * b - 4.0 * a * c);
    // Pick the sign that avoids cancellation in b + s.
    if (std::real(std::conj(b) * s) < 0.0) s = -s;
    cplx q = -0.5 * (b + s);
    if (q == cplx(0.0)) {
        // b = 0 and disc = 0 (or c = 0): symmetric fallback.
        cplx r = std::sqrt(-c / a);
        return {r, -r};
    }
    return {q / a, c / q};
}

// Cardano roots of the monic cubic z^3 + B z^2 + C z + D.
std::array<cplx, 3> cardano(cplx B, cplx C, cplx D) {
    const cplx third(1.0 / 3.0);
    cplx shift = -B * third;
    // Depressed cubic t^3 + p t + q, z = t + shift.
    cplx p = C - B * B * third;
    cplx q = 2.0 * B * B * B / 27.0 - B * C * third + D;
    cplx half_q = 0.5 * q;
    cplx disc = std::sqrt(half_q * half_q + p * p * p / 27.0);
    cplx u3 = -half_q + disc;
    if (std::abs(u3) < std::abs(-half_q - disc)) u3 = -half_q - disc;
    if (u3 == cplx(0.0)) {
        // p = q = 0: triple root at the shift.
        return {shift, shift, shift};
    }
    cplx u = std::pow(u3, third);
    const cplx w(-0.5, 0.8660254037844386467637231707529);  // primitive cube root of unity
    std::array<cplx, 3> out;
    for (int k = 0; k < 3; ++k) {
        cplx uk = u;
        for (int j = 0; j < k; ++j) uk *= w;
        out[static_cast<size_t>(k)] = uk - p / (3.0 * uk) + shift;
    }
    return out;
}

// Durand-Kerner sweep for the monic cubic, used if the closed form + polish
// leaves an oversized residual (e.g. near-degenerate discriminants).
std::array<cplx, 3> durand_kerner(cplx B, cplx C, cplx D) {
    auto p = [&](cplx z) { return ((z + B) * z + C) * z + D; };
    double R = 1.0 + std::max({std::abs(B), std::abs(C), std::abs(D)});
    std::array<cplx, 3> r{cplx(0.4, 0.9) * R, cplx(-0.91, 0.52) * R, cplx(0.31, -0.94) * R};
    for (int it = 0; it < 200; ++it) {
        double move = 0.0;
        for (int k = 0; k < 3; ++k) {
            cplx denom(1.0, 0.0);
            for (int j = 0; j < 3; ++j) {
                if (j != k) denom *= r[static_cast<size_t>(k)] - r[static_cast<size_t>(j)];
            }
            if (denom == cplx(0.0)) denom = cplx(1e-300, 0.0);
            cplx step = p(r[static_cast<size_t>(k)]) / denom;
            r[static_cast<size_t>(k)] -= step;
            move = std::max(move, std::abs(step));
        }
        if (move < 1e-15 * R) break;
    }
    return r;
}

}  // namespace

CubicMap::CubicMap(cplx lam, cplx cc) : lambda(lam), c(cc) {
    if (c == cplx(0.0)) throw std::invalid_argument("cubic parameter c must be non-zero");
}

std::vector<cplx> critical_points(const PolyMap& f) {
    if (f.degree() == 2) {
        // f'(z) = lambda + 2 a2 z.
        return {-f.lambda / (2.0 * f.a2)};
    }
    auto r = quadratic_roots(3.0 * f.a3, 2.0 * f.a2, f.lambda);
    // One Newton polish step against f' keeps |f'(root)| at rounding level.
    for (auto& z : r) {
        cplx d1 = f.deriv(z);
        cplx d2 = 6.0 * f.a3 * z + 2.0 * f.a2;
        if (d2 != cplx(0.0)) z -= d1 / d2;
    }
    return {r[0], r[1]};
}

std::vector<cplx> preimages(const PolyMap& f, cplx w) {
    std::vector<cplx> roots;
    if (f.degree() == 2) {
        auto r = quadratic_roots(f.a2, f.lambda, -w);
        roots.assign(r.begin(), r.end());
    } else {
        auto r = cardano(f.a2 / f.a3, f.lambda / f.a3, -w / f.a3);
        roots.assign(r.begin(), r.end());
    }
    auto polish = [&](cplx z) {
        for (int it = 0; it < 3; ++it) {
            cplx d = f.deriv(z);
            if (std::abs(d) < 1e-14) break;  // multiple-root neighborhood: keep as is
            z -= (f.eval(z) - w) / d;
        }
        return z;
    };
    for (auto& z : roots) z = polish(z);

    double scale = 1.0 + std::abs(w);
    bool ok = true;
    for (auto& z : roots) {
        if (std::abs(f.eval(z) - w) > 1e-11 * scale) ok = false;
    }
    if (!ok && f.degree() == 3) {
        auto r = durand_kerner(f.a2 / f.a3, f.lambda / f.a3, -w / f.a3);
        roots.assign(r.begin(), r.end());
        for (auto& z : roots) z = polish(z);
    }
    return roots;
}

EscapeResult escape_time(const PolyMap& f, cplx z0, double radius, int max_iter) {
    if (radius < 4.0) throw std::invalid_argument("escape radius must be >= 4");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
    cplx z = z0;
    if (std::abs(z) > radius) return {true, 0};
    for (int n = 1; n <= max_iter; ++n) {
        z = f.eval(z);
        if (std::abs(z) > radius) return {true, n};
    }
    return {false, max_iter};
}

ConjugateParameter conjugate_parameter(cplx lambda, cplx c) {
    if (c == cplx(0.0)) throw std::invalid_argument("conjugate_parameter: c must be non-zero");
    CubicMap pc(lambda, c);
    CubicMap pinv(lambda, 1.0 / c);
    PolyMap f = pc.poly(), g = pinv.poly();
    cplx scale = 1.0 / c;
    double res = 0.0;
    for (int j = 0; j < 50; ++j) {
        cplx z = 2.0 * unit(static_cast<double>(j) / 50.0);
        res = std::max(res, std::abs(scale * f.eval(z) - g.eval(scale * z)));
    }
    return {1.0 / c, scale, res};
}

FigOneToCubic figone_to_cubic(const FigOneMap& fig) {
    PolyMap f = fig.poly();
    auto crit = critical_points(f);
    cplx u = crit[0], v = crit[1];
    if (std::abs(v) < std::abs(u)) std::swap(u, v);  // make |c| >= 1 for a stable label
    if (u == cplx(0.0)) throw std::domain_error("degenerate map: critical point at the fixed point");
    cplx c = v / u;
    cplx scale = 1.0 / u;
    CubicMap pc(fig.lambda, c);
    PolyMap g = pc.poly();
    double res = 0.0;
    for (int j = 0; j < 50; ++j) {
        cplx z = 1.5 / scale * unit(static_cast<double>(j) / 50.0);
        res = std::max(res, std::abs(scale * f.eval(z) - g.eval(scale * z)));
    }
    return {c, scale, res};
}

cplx cubic_to_figone(cplx lambda, cplx c) {
    if (c == cplx(0.0)) throw std::invalid_argument("cubic_to_figone: c must be non-zero");
    return 0.75 * lambda * (c + 2.0 + 1.0 / c);
}

BlaschkeFraction::BlaschkeFraction(double tt, cplx pp, cplx qq) : t(tt), p(pp), q(qq) {
    if (std::abs(p) <= 1.0 || std::abs(q) <= 1.0) {
        throw std::invalid_argument("Blaschke zeros p, q must lie outside the closed unit disk");
    }
}

cplx BlaschkeFraction::eval(cplx z) const {
    cplx dp = 1.0 - std::conj(p) * z;
    cplx dq = 1.0 - std::conj(q) * z;
    if (std::abs(dp) < 1e-12 || std::abs(dq) < 1e-12) {
        throw std::domain_error("Blaschke evaluation too close to a pole");
    }
    return unit(t) * z * z * z * ((z - p) / dp) * ((z - q) / dq);
}

double BlaschkeFraction::circle_image(double x) const {
    cplx w = eval(unit(x));
    return frac01(std::arg(w) / TAU);
}

namespace {

// Unwrapped displacement x -> lift(x) - x of a degree-1 circle map, sampled
// on a uniform grid. For a circle homeomorphism the displacement range has
// width < 1, so nearest-integer unwrapping on a fine grid recovers the
// continuous branch; orbit displacements are then branch-corrected against
// the grid.
struct DisplacementBranch {
    std::vector<double> grid;  // size G + 1, grid[G] == grid[0] by closure

    explicit DisplacementBranch(const std::function<double(double)>& map_turns, int G) {
        grid.resize(static_cast<size_t>(G) + 1);
        double prev = frac01(map_turns(0.0) - 0.0);
        grid[0] = prev;
        for (int i = 1; i <= G; ++i) {
            double x = static_cast<double>(i % G) / G;
            double raw = frac01(map_turns(x) - x);
            double d = raw + std::round(prev - raw);
            grid[static_cast<size_t>(i)] = d;
            prev = d;
        }
        if (std::abs(grid.back() - grid.front()) > 0.25) {
            throw std::domain_error(
                "circle map displacement did not unwrap to a closed branch "
                "(not a degree-1 homeomorphism at this resolution)");
        }
    }

    double correct(double x, double raw) const {
        size_t G = grid.size() - 1;
        double ref = grid[static_cast<size_t>(frac01(x) * static_cast<double>(G) + 0.5) % G];
        return raw + std::round(ref - raw);
    }
};

double rotation_number_impl(const std::function<double(double)>& map_turns, int iters) {
    if (iters < 10) throw std::invalid_argument("rotation number needs at least 10 iterates");
    DisplacementBranch branch(map_turns, 4096);
    double x = 0.1234567890123;
    double wsum = 0.0, dsum = 0.0;
    for (int n = 1; n <= iters; ++n) {
        double raw = frac01(map_turns(x) - x);
        double d = branch.correct(x, raw);
        double s = static_cast<double>(n) / (iters + 1);
        double w = std::exp(-1.0 / (s * (1.0 - s)));
        wsum += w;
        dsum += w * d;
        x = frac01(x + d);
    }
    return frac01(dsum / wsum);
}

}  // namespace

double circle_rotation_number(const BlaschkeFraction& B, int iters) {
    return rotation_number_impl([&B](double x) { return B.circle_image(x); }, iters);
}

double circle_rotation_number(const std::function<double(double)>& map_turns, int iters) {
    return rotation_number_impl(map_turns, iters);
}

double tune_blaschke_parameter(cplx p, cplx q, double target_theta, double tol, int iters) {
    if (target_theta <= 0.0 || target_theta >= 1.0) {
        throw std::invalid_argument("target rotation number must lie in (0,1)");
    }
    auto rho = [&](double t) {
        return circle_rotation_number(BlaschkeFraction(frac01(t), p, q), iters);
    };
    // Signed circular defect in (-1/2, 1/2].
    auto defect = [&](double t) {
        double d = frac01(rho(t) - target_theta);
        return d > 0.5 ? d - 1.0 : d;
    };
    // The lifted rotation number increases by exactly 1 as t sweeps a full
    // turn, so a coarse scan finds one sign change away from the wrap.
    const int scan = 64;
    double prev_t = 0.0, prev_d = defect(0.0);
    double a = -1.0, b = -1.0, da = 0.0;
    if (std::abs(prev_d) < 1e-15) return 0.0;
    for (int i = 1; i <= scan; ++i) {
        double tcur = static_cast<double>(i % scan) / scan;
        double dcur = defect(tcur);
        if (prev_d < 0.0 && dcur >= 0.0 && prev_d > -0.25 && dcur < 0.25) {
            a = prev_t; da = prev_d; b = static_cast<double>(i) / scan;
            break;
        }
        prev_t = static_cast<double>(i) / scan;
        prev_d = dcur;
    }
    if (a < 0.0) throw std::domain_error("no rotation-number crossing found for this (p, q)");
    for (int it = 0; it < 200 && (b - a) > tol; ++it) {
        double mid = 0.5 * (a + b);
        double dm = defect(mid);
        if (dm < 0.0) { a = mid; da = dm; } else { b = mid; }
    }
    (void)da;
    return frac01(0.5 * (a + b));
}

}  // namespace sdyn
