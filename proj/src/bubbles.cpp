#include "sdyn/bubbles.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "sdyn/dynamics.hpp"

namespace sdyn {

namespace {

cplx lerp(cplx a, cplx b, double t) { return a + (b - a) * t; }

double polyline_diameter(const std::vector<BoundaryVertex>& vs) {
    if (vs.empty()) return 0.0;
    double xlo = vs[0].point.real(), xhi = xlo;
    double ylo = vs[0].point.imag(), yhi = ylo;
    for (const BoundaryVertex& v : vs) {
        xlo = std::min(xlo, v.point.real());
        xhi = std::max(xhi, v.point.real());
        ylo = std::min(ylo, v.point.imag());
        yhi = std::max(yhi, v.point.imag());
    }
    return std::hypot(xhi - xlo, yhi - ylo);
}

double segment_distance(cplx z, cplx a, cplx b) {
    const cplx ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 < 1e-300) return std::abs(z - a);
    double t = ((z.real() - a.real()) * ab.real() + (z.imag() - a.imag()) * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(z - (a + ab * t));
}

struct Pick {
    cplx z{0.0, 0.0};
    double best = 0.0;
    double margin = std::numeric_limits<double>::infinity();
};

// Preimage of w closest to `prev`. When `avoid` is set it marks the one
// preimage slot already claimed by the fixed boundary curve of the image
// region, so exactly the single candidate nearest to it is excluded. Where a
// traced branch touches that curve the preimage is a double root and the
// two candidates coincide; discarding one copy keeps the continuation.
// `margin` is second-best/best distance.
Pick pick_preimage(const PolyMap& f, cplx w, cplx prev, const std::optional<cplx>& avoid) {
    const std::vector<cplx> cands = preimages(f, w);
    if (cands.empty()) throw std::runtime_error("no finite preimages found");
    std::vector<cplx> keep;
    if (avoid && cands.size() > 1) {
        std::size_t skip = 0;
        double best_av = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < cands.size(); ++i) {
            const double d = std::abs(cands[i] - *avoid);
            if (d < best_av) {
                best_av = d;
                skip = i;
            }
        }
        for (std::size_t i = 0; i < cands.size(); ++i)
            if (i != skip) keep.push_back(cands[i]);
    } else {
        keep = cands;
    }
    Pick out;
    double best = std::numeric_limits<double>::infinity();
    double second = std::numeric_limits<double>::infinity();
    for (cplx c : keep) {
        const double d = std::abs(c - prev);
        if (d < best) {
            second = best;
            best = d;
            out.z = c;
        } else if (d < second) {
            second = d;
        }
    }
    out.best = best;
    out.margin = (best > 0.0) ? second / best : std::numeric_limits<double>::infinity();
    return out;
}

cplx nearest_of(const std::vector<cplx>& cands, cplx p) {
    cplx out = cands.front();
    double best = std::numeric_limits<double>::infinity();
    for (cplx c : cands) {
        const double d = std::abs(c - p);
        if (d < best) {
            best = d;
            out = c;
        }
    }
    return out;
}

bool two_sheeted(BubbleKind k) {
    return k == BubbleKind::critical || k == BubbleKind::precritical;
}

}  // namespace

cplx Bubble::boundary_at(double param) const {
    if (two_sheeted(kind))
        throw std::domain_error(
            "boundary parameterization is unavailable: the boundary circuit of a "
            "(pre)critical bubble covers each parameter twice");
    if (boundary.size() < 2) throw std::runtime_error("degenerate boundary polyline");
    const double p = frac01(param);
    auto it = std::lower_bound(boundary.begin(), boundary.end(), p,
                               [](const BoundaryVertex& v, double x) { return v.param < x; });
    const std::size_t hi = (it == boundary.end()) ? 0 : std::size_t(it - boundary.begin());
    const std::size_t lo = (hi == 0) ? boundary.size() - 1 : hi - 1;
    const BoundaryVertex& a = boundary[lo];
    const BoundaryVertex& b = boundary[hi];
    const double gap = frac01(b.param - a.param);
    if (gap < 1e-15) return a.point;
    return lerp(a.point, b.point, frac01(p - a.param) / gap);
}

bool Bubble::winding_contains(cplx z) const {
    if (boundary.size() < 3) return false;
    double total = 0.0;
    for (std::size_t i = 0; i < boundary.size(); ++i) {
        const cplx a = boundary[i].point - z;
        const cplx b = boundary[(i + 1) % boundary.size()].point - z;
        const double cross = a.real() * b.imag() - a.imag() * b.real();
        const double dot = a.real() * b.real() + a.imag() * b.imag();
        total += std::atan2(cross, dot);
    }
    return std::abs(total) > TAU / 2.0;
}

double Bubble::boundary_distance(cplx z) const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < boundary.size(); ++i) {
        const cplx a = boundary[i].point;
        const cplx b = boundary[(i + 1) % boundary.size()].point;
        best = std::min(best, segment_distance(z, a, b));
    }
    return best;
}

BubbleTree::BubbleTree(SiegelModel model, std::optional<MultiAngle> crit_address)
    : model_(std::make_shared<const SiegelModel>(std::move(model))),
      crit_address_(std::move(crit_address)) {
    if (model_->is_rigid_rotation())
        throw std::domain_error("bubble trees require a polynomial map, not a rigid rotation");
    if (crit_address_) {
        validate_multiangle(*crit_address_);
        if (crit_address_->size() % 2 == 0)
            throw std::invalid_argument("the critical address must have odd length");
    }
    auto d = std::make_unique<Bubble>();
    d->address = {};
    d->generation = 0;
    d->kind = BubbleKind::siegel_disk;
    d->center = cplx{0.0, 0.0};
    bool have_root = false;
    for (const BoundarySample& s : model_->boundary()) {
        d->boundary.push_back({s.angle, s.point});
        if (s.k == 0) {
            d->root = s.point;
            have_root = true;
        }
    }
    if (!have_root) throw std::runtime_error("model boundary lacks the critical sample");
    d->diameter = polyline_diameter(d->boundary);
    disk_ = std::move(d);
}

const Bubble* BubbleTree::find(const MultiAngle& address) const {
    if (address.empty()) return disk_.get();
    auto it = bubbles_.find(address);
    return (it == bubbles_.end()) ? nullptr : it->second.get();
}

const Bubble& BubbleTree::ensure(const MultiAngle& address) {
    if (address.empty()) return *disk_;
    validate_multiangle(address);
    if (address.size() % 2 == 0)
        throw std::invalid_argument("bubble addresses have odd length");
    if (!is_legal_bubble_address(address, crit_address_))
        throw std::domain_error("multi-angle is not a legal bubble address for this map");
    auto it = bubbles_.find(address);
    if (it != bubbles_.end()) return *it->second;
    return build_address(address);
}

cplx BubbleTree::delta_boundary_legal_point(std::int64_t m) {
    if (m < 0) throw std::invalid_argument("legal boundary points need m >= 0");
    auto it = legal_points_.find(m);
    if (it != legal_points_.end()) return it->second;
    std::int64_t from = 0;
    cplx x = disk_->root;
    for (std::int64_t j = m; j > 0; --j) {
        auto hit = legal_points_.find(j);
        if (hit != legal_points_.end()) {
            from = j;
            x = hit->second;
            break;
        }
    }
    legal_points_[0] = disk_->root;
    const double theta = model_->theta();
    for (std::int64_t j = from + 1; j <= m; ++j) {
        const cplx seed = model_->boundary_point(frac01(-double(j) * theta));
        const Pick p = pick_preimage(model_->map(), x, seed, std::nullopt);
        if (p.margin < 1.2)
            throw std::runtime_error("ambiguous inverse branch while stepping boundary points");
        x = p.z;
        legal_points_[j] = x;
    }
    return x;
}

cplx BubbleTree::attach_point(const MultiAngle& parent_address, std::int64_t m) {
    if (m < 0) throw std::invalid_argument("attach indices are non-negative");
    cplx y = delta_boundary_legal_point(m);
    if (parent_address.empty()) return y;
    const Bubble& par = ensure(parent_address);
    if (two_sheeted(par.kind))
        throw std::domain_error("attach points on (pre)critical bubbles are not constructed");
    const double s = frac01(-double(m) * model_->theta());
    const std::vector<MultiAngle> orbit = pi_orbit(parent_address);  // [parent, ..., (0)]
    for (auto it = orbit.rbegin(); it != orbit.rend(); ++it) {
        const Bubble& level = ensure(*it);
        if (two_sheeted(level.kind))
            throw std::domain_error("attach transport crosses a (pre)critical bubble");
        const cplx seed = level.boundary_at(s);
        const Pick p = pick_preimage(model_->map(), y, seed, std::nullopt);
        if (p.margin < 1.2)
            throw std::runtime_error("ambiguous inverse branch while transporting an attach point");
        y = p.z;
    }
    return y;
}

cplx BubbleTree::bubble_point(const MultiAngle& address, double rho, double own_angle_turns) {
    if (!(rho >= 0.0 && rho <= 1.0)) throw std::domain_error("rho must lie in [0, 1]");
    if (address.empty()) return model_->point_at(rho, own_angle_turns);
    const Bubble& b = ensure(address);
    if (two_sheeted(b.kind))
        throw std::domain_error("point transport into a (pre)critical bubble is not supported");
    const double theta = model_->theta();
    const double s = frac01(own_angle_turns + double(b.generation) * theta);
    if (rho == 1.0) return b.boundary_at(s);
    cplx y = model_->point_at(rho, s);
    const std::vector<MultiAngle> orbit = pi_orbit(address);  // [address, ..., (0)]
    for (auto it = orbit.rbegin(); it != orbit.rend(); ++it) {
        const Bubble& level = ensure(*it);
        if (two_sheeted(level.kind))
            throw std::domain_error("point transport crosses a (pre)critical bubble");
        const std::vector<cplx> cands = preimages(model_->map(), y);
        cplx chosen{0.0, 0.0};
        int inside = 0;
        for (cplx c : cands) {
            if (level.winding_contains(c)) {
                chosen = c;
                ++inside;
            }
        }
        if (inside != 1) chosen = nearest_of(cands, level.boundary_at(s));
        y = chosen;
    }
    return y;
}

std::vector<const Bubble*> BubbleTree::chain(const MultiAngle& point_address) {
    validate_multiangle(point_address);
    std::vector<const Bubble*> out{disk_.get()};
    for (std::size_t len = 1; len < point_address.size(); len += 2)
        out.push_back(&ensure(MultiAngle(point_address.begin(), point_address.begin() + len)));
    return out;
}

Bubble BubbleTree::trace_pullback(const Bubble& image, cplx start_preimage, bool image_is_disk) {
    const double theta = model_->theta();
    const PolyMap& f = model_->map();
    const std::vector<BoundaryVertex>& iv = image.boundary;
    const std::size_t n = iv.size();
    if (n < 8) throw std::runtime_error("image boundary polyline too coarse");

    std::size_t start_idx = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double d = angle_dist(iv[i].param, theta);
        if (d < best) {
            best = d;
            start_idx = i;
        }
    }

    // Traversal path over the image boundary, beginning at the theta-vertex
    // (the image of the root). Resolution doubles per generation up to 4096
    // vertices; beyond that the image path is stride-subsampled.
    std::vector<BoundaryVertex> path;
    if (n > 4096) {
        const std::size_t stride = (n + 4095) / 4096;
        for (std::size_t k = 0; k < n; k += stride) path.push_back(iv[(start_idx + k) % n]);
    } else {
        std::vector<BoundaryVertex> base;
        base.reserve(n);
        for (std::size_t k = 0; k < n; ++k) base.push_back(iv[(start_idx + k) % n]);
        if (2 * n <= 4096) {
            path.reserve(2 * n);
            for (std::size_t k = 0; k < n; ++k) {
                const BoundaryVertex& a = base[k];
                const BoundaryVertex& b = base[(k + 1) % n];
                path.push_back(a);
                path.push_back({frac01(a.param + 0.5 * frac01(b.param - a.param)),
                                lerp(a.point, b.point, 0.5)});
            }
        } else {
            path = std::move(base);
        }
    }

    Bubble out;
    out.boundary.push_back({path[0].param, start_preimage});

    cplx prev = start_preimage;
    double prev_param = path[0].param;
    cplx prev_w = path[0].point;

    auto pull_at = [&](double param, cplx w, cplx from) {
        std::optional<cplx> avoid;
        if (image_is_disk) avoid = model_->boundary_point(frac01(param - theta));
        return pick_preimage(f, w, from, avoid);
    };
    auto advance = [&](double param, cplx w, bool push) {
        Pick p = pull_at(param, w, prev);
        if (p.margin < 1.8) {
            const int K = 16;
            const double gap = frac01(param - prev_param);
            cplx walker = prev;
            for (int j = 1; j < K; ++j) {
                const double t = double(j) / K;
                walker = pull_at(frac01(prev_param + gap * t), lerp(prev_w, w, t), walker).z;
            }
            p = pull_at(param, w, walker);
        }
        prev = p.z;
        prev_param = param;
        prev_w = w;
        if (push) out.boundary.push_back({param, p.z});
        return p.z;
    };
    auto one_loop = [&]() {
        for (std::size_t k = 1; k < path.size(); ++k) advance(path[k].param, path[k].point, true);
        return advance(path[0].param, path[0].point, false);  // closure probe
    };

    const cplx end1 = one_loop();
    const double d1 = polyline_diameter(out.boundary);
    const double close_tol = 1e-4 * d1 + 1e-13;
    if (std::abs(end1 - start_preimage) < close_tol) {
        out.kind = BubbleKind::off_critical;
    } else {
        // The pullback did not close after one circuit: the region contains a
        // critical point and its boundary is traced by a second circuit.
        out.boundary.push_back({path[0].param, end1});
        const cplx end2 = one_loop();
        const double d2 = polyline_diameter(out.boundary);
        if (std::abs(end2 - start_preimage) > 1e-4 * d2 + 1e-13)
            throw std::runtime_error("bubble boundary failed to close after two circuits");
        out.kind = BubbleKind::critical;
    }
    out.diameter = polyline_diameter(out.boundary);
    return out;
}

const Bubble& BubbleTree::build_address(const MultiAngle& addr) {
    if (bubbles_.size() >= 20000) throw std::runtime_error("bubble budget exceeded");
    Bubble nb;
    nb.address = addr;
    nb.generation = int(addr.back()) + 1;

    const Bubble* image = nullptr;
    if (addr.size() == 1 && addr[0] == 0) {
        image = disk_.get();
        nb.image = {};
    } else {
        nb.image = pi_step(addr);
        image = &ensure(nb.image);
    }

    if (addr.size() == 1) {
        nb.parent = {};
        nb.root = delta_boundary_legal_point(addr[0]);
    } else {
        nb.parent.assign(addr.begin(), addr.end() - 2);
        const Bubble& par = ensure(nb.parent);
        if (two_sheeted(par.kind))
            throw std::domain_error(
                "descendants of a (pre)critical bubble are not constructed beyond the special segment");
        nb.root = attach_point(nb.parent, addr.back() - par.generation);
    }

    Bubble traced = trace_pullback(*image, nb.root, image == disk_.get());
    nb.boundary = std::move(traced.boundary);
    nb.diameter = traced.diameter;
    if (traced.kind == BubbleKind::critical) {
        nb.kind = BubbleKind::critical;
    } else if (two_sheeted(image->kind)) {
        nb.kind = BubbleKind::precritical;
    } else {
        nb.kind = BubbleKind::off_critical;
    }

    if (nb.kind == BubbleKind::off_critical) {
        // Rotate the traversal so vertices are ascending in parameter.
        std::size_t lo = 0;
        for (std::size_t i = 1; i < nb.boundary.size(); ++i)
            if (nb.boundary[i].param < nb.boundary[lo].param) lo = i;
        std::rotate(nb.boundary.begin(), nb.boundary.begin() + long(lo), nb.boundary.end());
        if (image->center) {
            for (cplx c : preimages(model_->map(), *image->center))
                if (nb.winding_contains(c)) nb.center = c;
        }
    }

    auto owned = std::make_unique<Bubble>(std::move(nb));
    Bubble& ref = *owned;
    bubbles_[addr] = std::move(owned);
    if (ref.kind == BubbleKind::critical) {
        // Pull the internal ray of the image bubble through the enclosed
        // critical value back to the two separatrix branches.
        const PolyMap& f = model_->map();
        cplx c_in{0.0, 0.0};
        bool found = false;
        for (cplx c : critical_points(f)) {
            if (ref.winding_contains(c)) {
                c_in = c;
                found = true;
                break;
            }
        }
        if (found) {
            const Bubble& img = ref.image.empty() ? *disk_ : *find(ref.image);
            cplx u = f.eval(c_in);
            for (int j = 0; j < img.generation; ++j) u = f.eval(u);
            const auto pp = model_->polar(u);
            if (pp && pp->angle) {
                const double beta = frac01(*pp->angle - double(img.generation) * model_->theta());
                const double rho0 = std::min(pp->rho, 1.0);
                const int steps = 24;
                std::vector<cplx> b0{c_in}, b1{c_in};
                cplx p0 = c_in, p1 = c_in;
                bool ok = true;
                for (int j = 1; j <= steps && ok; ++j) {
                    const double rho = rho0 + (1.0 - rho0) * double(j) / steps;
                    cplx w;
                    try {
                        w = bubble_point(ref.image, std::min(rho, 1.0), beta);
                    } catch (const std::exception&) {
                        ok = false;
                        break;
                    }
                    const std::vector<cplx> cands = preimages(f, w);
                    if (cands.size() < 2) {
                        ok = false;
                        break;
                    }
                    if (j == 1) {
                        std::vector<cplx> sorted = cands;
                        std::sort(sorted.begin(), sorted.end(), [&](cplx a, cplx b) {
                            return std::abs(a - c_in) < std::abs(b - c_in);
                        });
                        p0 = sorted[0];
                        p1 = sorted[1];
                    } else {
                        p0 = nearest_of(cands, p0);
                        p1 = nearest_of(cands, p1);
                    }
                    b0.push_back(p0);
                    b1.push_back(p1);
                }
                if (ok) ref.separatrices = {std::move(b0), std::move(b1)};
            }
        }
    }
    return ref;
}

void BubbleTree::build(int max_gen, double min_diam) {
    if (max_gen < 1 || max_gen > 12)
        throw std::invalid_argument("max_gen must be in [1, 12]");
    std::function<void(MultiAngle&)> rec = [&](MultiAngle& addr) {
        const Bubble* b = nullptr;
        try {
            b = &ensure(addr);
        } catch (const std::exception&) {
            // Illegal for this map, shielded by a critical bubble, or the
            // pullback is numerically unresolvable; skip the subtree but keep
            // the rest of the tree usable.
            return;
        }
        if (two_sheeted(b->kind)) return;
        if (min_diam > 0.0 && b->diameter < 0.25 * min_diam) return;
        const std::int64_t last = addr.back();
        for (std::int64_t e = last + 1; e <= max_gen - 1; ++e) {
            addr.push_back(last);
            addr.push_back(e);
            rec(addr);
            addr.pop_back();
            addr.pop_back();
        }
    };
    for (std::int64_t e0 = 0; e0 <= max_gen - 1; ++e0) {
        MultiAngle a{e0};
        rec(a);
    }
}

std::vector<const Bubble*> BubbleTree::nodes(double min_diam) const {
    std::vector<const Bubble*> out{disk_.get()};
    for (const auto& [addr, b] : bubbles_)
        if (b->diameter >= min_diam) out.push_back(b.get());
    std::stable_sort(out.begin(), out.end(), [](const Bubble* a, const Bubble* b) {
        return a->generation < b->generation;
    });
    return out;
}

BubbleRay BubbleTree::trace_ray(const std::vector<std::int64_t>& pattern, int max_depth,
                                double tail_tol) {
    if (pattern.empty()) throw std::invalid_argument("pattern must be non-empty");
    for (std::int64_t d : pattern)
        if (d < 1) throw std::invalid_argument("pattern increments must be >= 1");
    if (max_depth < 1 || max_depth > 400)
        throw std::invalid_argument("max_depth must be in [1, 400]");

    BubbleRay ray;
    ray.pattern = pattern;
    ray.period = int(std::accumulate(pattern.begin(), pattern.end(), std::int64_t{0}));

    MultiAngle addr{0};
    std::int64_t e_last = 0;
    const Bubble* last = nullptr;
    for (int i = 0;; ++i) {
        const Bubble& b = ensure(addr);
        ray.chain.push_back(addr);
        ray.tail_diameter = b.diameter;
        last = &b;
        if (b.diameter < tail_tol || int(ray.chain.size()) >= max_depth || two_sheeted(b.kind))
            break;
        const std::int64_t e_new = e_last + pattern[std::size_t(i) % pattern.size()];
        addr.push_back(e_last);
        addr.push_back(e_new);
        e_last = e_new;
    }

    const PolyMap& f = model_->map();
    const int m = ray.period;
    cplx x = last->root;
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
        cplx z = x, d = 1.0;
        for (int j = 0; j < m; ++j) {
            d *= f.deriv(z);
            z = f.eval(z);
        }
        const cplx dF = d - 1.0;
        if (std::abs(dF) < 1e-300) break;
        const cplx step = (z - x) / dF;
        x -= step;
        if (std::abs(step) < 1e-13 * (1.0 + std::abs(x))) {
            converged = true;
            break;
        }
    }
    cplx z = x, d = 1.0;
    for (int j = 0; j < m; ++j) {
        d *= f.deriv(z);
        z = f.eval(z);
    }
    ray.landing_estimate = x;
    ray.landing_residual = std::abs(z - x);
    ray.multiplier_modulus = std::abs(d);
    ray.resolved = converged && ray.landing_residual < 1e-8 &&
                   ray.multiplier_modulus > 1.0 + 1e-9 &&
                   std::abs(x - last->root) < std::max(1e3 * ray.tail_diameter, 1e-4);
    return ray;
}

}  // namespace sdyn
