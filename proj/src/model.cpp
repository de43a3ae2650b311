#include "sdyn/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sdyn/dynamics.hpp"

namespace sdyn {

namespace {

int chain_depth(const MultiAngle& ma) { return int(ma.size() / 2); }

bool two_sheeted(BubbleKind k) {
    return k == BubbleKind::critical || k == BubbleKind::precritical;
}

// Integer m with -m*theta matching beta (mod 1) within tol, if any.
std::optional<std::int64_t> match_legal_ray(double beta, double theta, std::int64_t max_m,
                                            double tol) {
    for (std::int64_t m = 0; m <= max_m; ++m)
        if (angle_dist(beta, frac01(-double(m) * theta)) < tol) return m;
    return std::nullopt;
}

// Point address for own polar angle beta inside the bubble at `addr` (empty =
// Siegel disk). Falls back to carrying the raw angle when beta is not legal.
void encode_ray(ModelPoint& out, const MultiAngle& addr, double beta, double theta,
                const LocateOptions& opts) {
    const auto m = match_legal_ray(beta, theta, opts.max_ray_index, opts.ray_match_tol);
    if (addr.empty()) {
        if (m) {
            out.ma = {*m};
        } else {
            out.ma = {};
            out.angle = frac01(beta);
        }
        return;
    }
    const std::int64_t last = addr.back();
    if (m && *m == last) {
        out.ma = addr;
        out.ma.push_back(last);  // entry ray: even address
    } else if (m && *m > last) {
        out.ma = addr;
        out.ma.push_back(last);
        out.ma.push_back(*m);
    } else {
        out.ma = addr;
        out.angle = frac01(beta);
    }
}

// Evaluate the embedded point of an integer point-address in a tree.
cplx embed_address(BubbleTree& tree, const MultiAngle& ma, double rho) {
    const std::size_t len = ma.size();
    const std::size_t cut = (len % 2 == 1) ? (len >= 2 ? len - 2 : 0) : len - 1;
    const MultiAngle bubble(ma.begin(), ma.begin() + long(cut));
    const double angle = frac01(-double(ma.back()) * tree.model().theta());
    return tree.bubble_point(bubble, rho, angle);
}

ModelPoint unresolved_prefix(BubbleTree& q_tree, const MultiAngle& ma, const char* why) {
    ModelPoint out;
    out.rho = RHO_INFINITE;
    out.resolved = false;
    out.note = why;
    // Deepest odd prefix that still resolves, as a representative.
    std::size_t len = (ma.size() % 2 == 1) ? ma.size() : ma.size() - 1;
    for (;; len -= 2) {
        if (len == 0 || ma.empty()) {
            out.ma = {};
            out.embedded = q_tree.disk().root;
            break;
        }
        MultiAngle prefix(ma.begin(), ma.begin() + long(len));
        try {
            const Bubble& b = q_tree.ensure(prefix);
            out.ma = prefix;
            out.embedded = b.root;
            break;
        } catch (const std::exception&) {
            if (len < 2) {
                out.ma = {};
                out.embedded = q_tree.disk().root;
                break;
            }
        }
    }
    out.depth = chain_depth(out.ma);
    return out;
}

}  // namespace

ModelPoint locate_point(BubbleTree& tree, cplx z, const LocateOptions& opts) {
    const SiegelModel& model = tree.model();
    const PolyMap& f = model.map();
    const double theta = model.theta();

    ModelPoint out;
    out.embedded = z;

    // Siegel closure first.
    if (const auto pp = model.polar(z)) {
        if (pp->rho <= 1.0 + 1e-9) {
            double rho = std::min(pp->rho, 1.0);
            if (rho >= 1.0 - opts.rho_snap) rho = 1.0;
            out.rho = rho;
            out.depth = 0;
            if (rho < 1e-12 || !pp->angle) {
                out.ma = {0};
                return out;
            }
            encode_ray(out, {}, frac01(*pp->angle), theta, opts);
            return out;
        }
    }

    // Built bubbles, deepest first; interiors are disjoint so the first hit
    // wins and attach points resolve to the deepest closure.
    std::vector<const Bubble*> ns = tree.nodes();
    const double tol = opts.boundary_tol * std::max(1.0, tree.disk().diameter);
    for (auto it = ns.rbegin(); it != ns.rend(); ++it) {
        const Bubble* b = *it;
        if (b->generation == 0) continue;
        const bool inside = b->winding_contains(z);
        if (!inside && b->boundary_distance(z) > tol) continue;
        out.depth = int((b->address.size() + 1) / 2);
        if (two_sheeted(b->kind)) {
            out.ma = b->address;
            out.rho = RHO_INFINITE;
            out.resolved = false;
            out.note = "inside a critical bubble: only the separatrix carries model values";
            return out;
        }
        cplx u = z;
        for (int j = 0; j < b->generation; ++j) u = f.eval(u);
        double rho;
        double ang;
        if (const auto pp = model.polar(u); pp && pp->angle) {
            rho = std::min(pp->rho, 1.0);
            ang = *pp->angle;
        } else if (const auto bl = model.locate_on_boundary(u);
                   bl.distance < std::max(1e-3 * (1.0 + std::abs(u)), 0.9 * bl.gap)) {
            // Forward transport amplifies polygon sag past the strict polar
            // tolerance; a point within the polygon's local resolution is
            // still a boundary point.
            rho = 1.0;
            ang = bl.angle;
        } else {
            out.ma = b->address;
            out.rho = RHO_INFINITE;
            out.resolved = false;
            out.note = "polar transport did not converge";
            return out;
        }
        if (rho >= 1.0 - opts.rho_snap) rho = 1.0;
        out.rho = rho;
        const double beta = frac01(ang - double(b->generation) * theta);
        encode_ray(out, b->address, beta, theta, opts);
        return out;
    }

    // Not in the constructed structure: escaping points are outside the
    // filled Julia set, the rest get a truncated separating prefix.
    cplx w = z;
    const double R = opts.escape_radius * std::max(1.0, std::abs(z));
    for (int i = 0; i < opts.escape_iters; ++i) {
        w = f.eval(w);
        if (std::abs(w) > R)
            throw std::domain_error("orbit escapes: the point is outside the filled Julia set");
    }
    // Non-escaping and outside the trusted series: a point hugging the disk
    // polygon (beyond the strict polar fallback) is still a boundary point;
    // near a corner the polygon only resolves to its local chord length.
    if (const auto bl = model.locate_on_boundary(z);
        bl.distance < std::max(1e-3 * (1.0 + std::abs(z)), 0.9 * bl.gap)) {
        out.rho = 1.0;
        out.depth = 0;
        encode_ray(out, {}, frac01(bl.angle), theta, opts);
        return out;
    }

    const Bubble* best = nullptr;
    double best_d = std::numeric_limits<double>::infinity();
    for (const Bubble* b : ns) {
        const double d = b->boundary_distance(z);
        if (d < best_d) {
            best_d = d;
            best = b;
        }
    }
    out.ma = best ? best->address : MultiAngle{};
    out.rho = RHO_INFINITE;
    out.resolved = false;
    out.depth = chain_depth(out.ma);
    out.note = "truncated: deepest separating prefix at the built tree depth";
    return out;
}

ModelPoint eta_eval(BubbleTree& q_tree, const MultiAngle& ma, double rho) {
    validate_multiangle(ma);
    if (std::isinf(rho)) return unresolved_prefix(q_tree, ma, "infinite polar radius");
    if (!(rho >= 0.0 && rho <= 1.0))
        throw std::domain_error("rho must lie in [0, 1] or be the infinite sentinel");
    ModelPoint out;
    out.ma = ma;
    out.rho = rho;
    out.depth = chain_depth(ma);
    try {
        out.embedded = embed_address(q_tree, ma, rho);
    } catch (const std::exception&) {
        return unresolved_prefix(q_tree, ma, "depth beyond the constructible tree");
    }
    return out;
}

ModelPoint eta_transport(BubbleTree& q_tree, const ModelPoint& located) {
    if (!located.resolved || std::isinf(located.rho))
        return unresolved_prefix(q_tree, located.ma, "located prefix only");
    if (located.angle) {
        ModelPoint out = located;
        out.quotient_canonical = false;
        try {
            out.embedded = q_tree.bubble_point(located.ma, located.rho, *located.angle);
        } catch (const std::exception&) {
            return unresolved_prefix(q_tree, located.ma, "transport beyond the constructible tree");
        }
        return out;
    }
    return eta_eval(q_tree, located.ma, located.rho);
}

ModelPoint phi(BubbleTree& q_tree, const RotationNumber& rot, cplx c, const PhiOptions& opts) {
    if (std::abs(c) < 1e-12) throw std::domain_error("the parameter c must be nonzero");
    const CubicMap cm(rot.multiplier(), c);
    const PolyMap f = cm.poly();

    const double R = opts.locate.escape_radius * std::max(1.0, std::abs(c));
    for (const cplx crit : {cplx{1.0, 0.0}, c}) {
        cplx z = crit;
        for (int i = 0; i < opts.locate.escape_iters; ++i) {
            z = f.eval(z);
            if (std::abs(z) > R)
                throw std::domain_error(
                    "a critical orbit escapes: the parameter is outside the bounded-orbits locus");
        }
    }

    // The Siegel boundary holds at least one critical point; prefer the
    // marked point 1, falling back to c when 1 does not produce a clean
    // invariant boundary curve.
    std::optional<SiegelModel> model;
    std::string which;
    try {
        model.emplace(f, rot, cplx{1.0, 0.0}, opts.series_terms, opts.orbit_samples);
        which = "1";
    } catch (const std::exception&) {
    }
    if (!model || model->radius_low_confidence()) {
        try {
            SiegelModel alt(f, rot, c, opts.series_terms, opts.orbit_samples);
            if (!model || !alt.radius_low_confidence()) {
                model.emplace(std::move(alt));
                which = "c";
            }
        } catch (const std::exception&) {
        }
    }
    if (!model)
        throw std::domain_error("no critical point generates the Siegel boundary curve");

    BubbleTree p_tree(*model);
    p_tree.build(opts.max_gen, opts.min_diam);
    LocateOptions lo = opts.locate;
    lo.rho_snap = opts.rho_snap;
    ModelPoint located = locate_point(p_tree, c, lo);
    ModelPoint out = eta_transport(q_tree, located);
    // The correspondence never takes interior-of-disk values; a depth-0 point
    // below the boundary can only be numerical drift.
    if (out.resolved && !std::isinf(out.rho) && out.depth == 0 && out.rho < 1.0) {
        out.resolved = false;
        out.note = "anomaly: value landed inside the Siegel disk";
    }
    if (!which.empty() && which == "c" && out.note.empty())
        out.note = "boundary marking taken at the free critical point";
    return out;
}

ModelPoint quotient_project(BubbleTree& q_tree, const ModelPoint& mp) {
    const double theta = q_tree.model().theta();
    std::optional<double> alpha;
    if (mp.rho == 1.0 && !std::isinf(mp.rho)) {
        if (!mp.angle && mp.ma.size() == 1)
            alpha = frac01(-double(mp.ma[0]) * theta);
        else if (mp.angle && mp.ma.empty())
            alpha = frac01(*mp.angle);
    }
    if (!alpha) {
        ModelPoint out = mp;
        out.quotient_canonical = true;
        return out;
    }
    const double canonical = std::min(*alpha, 1.0 - *alpha);
    ModelPoint out;
    out.ma = {};
    out.rho = 1.0;
    out.angle = canonical;
    out.embedded = q_tree.bubble_point({}, 1.0, canonical);
    out.quotient_canonical = true;
    out.resolved = mp.resolved;
    out.depth = 0;
    return out;
}

double symmetry_residual(BubbleTree& q_tree, const RotationNumber& rot, cplx c,
                         const PhiOptions& opts) {
    const ModelPoint a = quotient_project(q_tree, phi(q_tree, rot, c, opts));
    const ModelPoint b = quotient_project(q_tree, phi(q_tree, rot, 1.0 / c, opts));
    if (!a.resolved || !b.resolved)
        throw std::domain_error("phi did not resolve for the parameter or its reciprocal");
    if (a.angle && b.angle && a.ma.empty() && b.ma.empty() && a.rho == 1.0 && b.rho == 1.0)
        return std::abs(*a.angle - *b.angle);
    return std::abs(a.embedded - b.embedded);
}

BubbleTree make_quadratic_tree(const RotationNumber& rot, int series_terms, int orbit_samples) {
    const QuadraticMap qm(rot);
    SiegelModel model(qm.poly(), rot, cplx{1.0, 0.0}, series_terms, orbit_samples);
    return BubbleTree(std::move(model));
}

}  // namespace sdyn
