#include "sdyn/siegel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sdyn {

std::vector<cplx> linearization_series(const PolyMap& map, int terms) {
    if (terms < 2) throw std::invalid_argument("linearization series needs at least 2 terms");
    const cplx lambda = map.lambda;
    const double theta = std::arg(lambda) / TAU;
    // b[k] holds the coefficient of w^k; psi2[k] the coefficient of psi^2.
    std::vector<cplx> b(static_cast<size_t>(terms) + 1, cplx(0.0));
    std::vector<cplx> psi2(static_cast<size_t>(terms) + 1, cplx(0.0));
    b[1] = cplx(1.0);
    for (int k = 2; k <= terms; ++k) {
        size_t uk = static_cast<size_t>(k);
        // psi^2 coefficient at k uses only b_1..b_{k-1}.
        cplx s2(0.0);
        for (int i = 1; i <= k - 1; ++i) {
            s2 += b[static_cast<size_t>(i)] * b[static_cast<size_t>(k - i)];
        }
        psi2[uk] = s2;
        // psi^3 coefficient at k: sum b_i * psi2_{k-i}, all indices < k.
        cplx s3(0.0);
        for (int i = 1; i <= k - 2; ++i) {
            s3 += b[static_cast<size_t>(i)] * psi2[static_cast<size_t>(k - i)];
        }
        // lambda^k kept on the unit circle exactly via the angle.
        cplx lk = unit(frac01(static_cast<double>(k) * theta));
        cplx denom = lk - lambda;
        if (std::abs(denom) < 1e-12) {
            throw std::domain_error("small divisor breakdown in linearization series");
        }
        b[uk] = (map.a2 * s2 + map.a3 * s3) / denom;
    }
    return std::vector<cplx>(b.begin() + 1, b.end());  // b_1..b_N
}

double conformal_radius_estimate(const std::vector<cplx>& coeffs) {
    // Least-squares slope of log|b_k| over the tail; radius = e^{-slope}.
    size_t n = coeffs.size();
    size_t lo = n / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (size_t k = lo; k < n; ++k) {
        double a = std::abs(coeffs[k]);
        if (a <= 0.0) continue;
        double x = static_cast<double>(k + 1);  // coeffs[k] is b_{k+1}
        double y = std::log(a);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++m;
    }
    if (m < 8) return std::numeric_limits<double>::infinity();
    double denom = m * sxx - sx * sx;
    double slope = (m * sxy - sx * sy) / denom;
    return std::exp(-slope);
}

SiegelModel::SiegelModel(PolyMap map, const RotationNumber& rot, cplx boundary_crit,
                         int series_terms, int orbit_samples)
    : map_(map), rot_(rot), boundary_crit_(boundary_crit) {
    if (orbit_samples < 64) throw std::invalid_argument("need at least 64 boundary samples");
    coeffs_ = linearization_series(map_, series_terms);
    radius_ = conformal_radius_estimate(coeffs_);
    rigid_ = std::isinf(radius_);

    const double theta = rot_.value();
    boundary_.reserve(static_cast<size_t>(orbit_samples));
    cplx z = boundary_crit_;
    for (int k = 0; k < orbit_samples; ++k) {
        if (std::abs(z) >= 10.0) {
            throw std::domain_error(
                "boundary orbit escaped |z| >= 10: the claimed boundary critical point "
                "does not sample a Siegel boundary");
        }
        boundary_.push_back({frac01(static_cast<double>(k) * theta), z, k});
        z = map_.eval(z);
    }
    std::sort(boundary_.begin(), boundary_.end(),
              [](const BoundarySample& a, const BoundarySample& b) { return a.angle < b.angle; });

    min_boundary_dist_ = std::numeric_limits<double>::infinity();
    for (const auto& s : boundary_) {
        min_boundary_dist_ = std::min(min_boundary_dist_, std::abs(s.point));
    }

    if (!rigid_) {
        double hi = radius_ / min_boundary_dist_;
        radius_low_confidence_ = (hi > 4.0 || hi < 0.25);

        // Align the interior normalization with the boundary parameterization:
        // circular mean of (grid angle - polygon angle of psi at that angle).
        cplx acc(0.0);
        for (int j = 0; j < 64; ++j) {
            double u = static_cast<double>(j) / 64.0;
            cplx w = trust_rho() * radius_ * unit(u);
            cplx zz = psi(w);
            double best = std::numeric_limits<double>::infinity();
            double best_param = 0.0;
            for (const auto& s : boundary_) {
                double d = std::abs(zz - s.point);
                if (d < best) { best = d; best_param = s.angle; }
            }
            acc += unit(u - best_param);
        }
        sigma_ = frac01(std::arg(acc) / TAU);

        // Newton seed table over a polar grid of the trusted interior.
        for (double rho : {0.15, 0.3, 0.45, 0.6, 0.75, 0.85}) {
            for (int j = 0; j < 64; ++j) {
                cplx w = rho * radius_ * unit(static_cast<double>(j) / 64.0);
                seed_ws_.push_back(w);
                seeds_.push_back(psi(w));
            }
        }
    }
}

cplx SiegelModel::psi(cplx w) const {
    cplx acc(0.0);
    for (size_t k = coeffs_.size(); k-- > 0;) {
        acc = acc * w + coeffs_[k];
    }
    return acc * w;
}

cplx SiegelModel::psi_deriv(cplx w) const {
    cplx acc(0.0);
    for (size_t k = coeffs_.size(); k-- > 0;) {
        acc = acc * w + static_cast<double>(k + 1) * coeffs_[k];
    }
    return acc;
}

cplx SiegelModel::boundary_point(double angle_turns) const {
    double a = frac01(angle_turns);
    // Cyclic binary search for the bracketing vertices.
    auto it = std::lower_bound(boundary_.begin(), boundary_.end(), a,
                               [](const BoundarySample& s, double v) { return s.angle < v; });
    size_t hi = (it == boundary_.end()) ? 0 : static_cast<size_t>(it - boundary_.begin());
    size_t lo = (hi == 0) ? boundary_.size() - 1 : hi - 1;
    double a0 = boundary_[lo].angle, a1 = boundary_[hi].angle;
    double span = frac01(a1 - a0);
    if (span <= 0.0) return boundary_[lo].point;
    double t = frac01(a - a0) / span;
    return boundary_[lo].point + t * (boundary_[hi].point - boundary_[lo].point);
}

SiegelModel::BoundaryLocation SiegelModel::locate_on_boundary(cplx z) const {
    double best = std::numeric_limits<double>::infinity();
    double best_angle = 0.0;
    size_t best_i = 0;
    size_t n = boundary_.size();
    auto seg_len = [&](size_t i) {
        return std::abs(boundary_[(i + 1) % n].point - boundary_[i].point);
    };
    for (size_t i = 0; i < n; ++i) {
        const auto& s0 = boundary_[i];
        const auto& s1 = boundary_[(i + 1) % n];
        cplx d = s1.point - s0.point;
        double len2 = std::norm(d);
        double t = 0.0;
        if (len2 > 0.0) {
            t = std::clamp(std::real(std::conj(d) * (z - s0.point)) / len2, 0.0, 1.0);
        }
        cplx proj = s0.point + t * d;
        double dist = std::abs(z - proj);
        if (dist < best) {
            best = dist;
            double span = frac01(s1.angle - s0.angle);
            best_angle = frac01(s0.angle + t * span);
            best_i = i;
        }
    }
    // Local resolution scale: a corner (boundary critical point) bulges out
    // between samples, so take the widest chord in a 3-segment window.
    double gap = std::max({seg_len((best_i + n - 1) % n), seg_len(best_i), seg_len((best_i + 1) % n)});
    return {best_angle, best, gap};
}

cplx SiegelModel::point_at(double rho, double angle_turns) const {
    if (rigid_) throw std::domain_error("point_at is undefined for a rigid rotation model");
    if (rho < 0.0 || rho > 1.0 + 1e-12) {
        throw std::invalid_argument("polar radius must lie in [0, 1]");
    }
    if (rho == 0.0) return cplx(0.0);
    if (rho <= trust_rho()) {
        return psi(rho * radius_ * unit(angle_turns + sigma_));
    }
    cplx inner = psi(trust_rho() * radius_ * unit(angle_turns + sigma_));
    cplx outer = boundary_point(angle_turns);
    if (rho >= 1.0) return outer;
    // Untrusted collar: radial blend between the series rim and the polygon.
    double t = (rho - trust_rho()) / (1.0 - trust_rho());
    return (1.0 - t) * inner + t * outer;
}

std::optional<PolarPoint> SiegelModel::polar(cplx z) const {
    if (rigid_) throw std::domain_error("polar is undefined for a rigid rotation model");
    if (std::abs(z) == 0.0) return PolarPoint{0.0, std::nullopt, 0.0};

    // Newton on psi(w) = z from the nearest precomputed seed.
    size_t best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < seeds_.size(); ++i) {
        double d = std::abs(seeds_[i] - z);
        if (d < bd) { bd = d; best = i; }
    }
    cplx w = seed_ws_[best];
    bool converged = false;
    for (int it = 0; it < 60; ++it) {
        cplx dpsi = psi_deriv(w);
        if (std::abs(dpsi) < 1e-14) break;
        cplx step = (psi(w) - z) / dpsi;
        w -= step;
        if (std::abs(w) > 0.95 * radius_) break;  // left the trusted region
        if (std::abs(step) < 1e-14 * radius_) { converged = true; break; }
    }
    double resid = std::abs(psi(w) - z);
    if (converged && std::abs(w) <= trust_rho() * radius_ * (1.0 + 1e-9) &&
        resid < 1e-9 * (1.0 + std::abs(z))) {
        return PolarPoint{std::abs(w) / radius_,
                          frac01(std::arg(w) / TAU - sigma_), resid};
    }

    // Boundary fallback: exact samples and their immediate neighborhood.
    auto loc = locate_on_boundary(z);
    if (loc.distance < 1e-5 * (1.0 + std::abs(z))) {
        return PolarPoint{1.0, loc.angle, loc.distance};
    }
    return std::nullopt;
}

double linearization_defect(const SiegelModel& model, double rho_fraction, int samples) {
    if (!(rho_fraction > 0.0 && rho_fraction <= SiegelModel::trust_rho()))
        throw std::invalid_argument("rho_fraction must lie in (0, trust_rho]");
    if (samples < 1) throw std::invalid_argument("need at least one sample");
    if (model.is_rigid_rotation()) return 0.0;
    const cplx lambda = model.map().lambda;
    const double r = rho_fraction * model.conformal_radius();
    double worst = 0.0;
    for (int j = 0; j < samples; ++j) {
        const cplx w = r * unit(static_cast<double>(j) / samples);
        worst = std::max(worst, std::abs(model.psi(lambda * w) - model.map().eval(model.psi(w))));
    }
    return worst;
}

std::optional<bool> SiegelModel::contains(cplx z, double band) const {
    if (rigid_) throw std::domain_error("contains is undefined for a rigid rotation model");
    auto loc = locate_on_boundary(z);
    if (loc.distance <= band) return std::nullopt;  // indeterminate near the polygon
    double winding = 0.0;
    size_t n = boundary_.size();
    for (size_t i = 0; i < n; ++i) {
        cplx u = boundary_[i].point - z;
        cplx v = boundary_[(i + 1) % n].point - z;
        winding += std::atan2(std::imag(std::conj(u) * v), std::real(std::conj(u) * v));
    }
    return std::abs(winding) > 0.5 * TAU;
}

}  // namespace sdyn
