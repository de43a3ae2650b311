#include "doctest.h"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "sdyn/model.hpp"

using namespace sdyn;

namespace {
const RotationNumber kGolden = RotationNumber::golden();

BubbleTree& qtree() {
    static BubbleTree tree = make_quadratic_tree(kGolden);
    static bool built = [] {
        tree.build(4, 1e-4);
        return true;
    }();
    (void)built;
    return tree;
}
}  // namespace

TEST_CASE("point addresses at the disk level evaluate to polar points") {
    BubbleTree& tree = qtree();
    // (0) at rho = 1 is the boundary point of angle 0: the critical point.
    ModelPoint mp = eta_eval(tree, {0}, 1.0);
    CHECK(mp.resolved);
    CHECK(std::abs(mp.embedded - cplx(1.0, 0.0)) < 1e-9);
    // (0) at rho = 0 is the fixed point 0.
    ModelPoint center = eta_eval(tree, {0}, 0.0);
    CHECK(center.resolved);
    CHECK(std::abs(center.embedded) < 1e-9);
    // (m) at rho = 1 is the boundary point of angle -m*theta.
    ModelPoint m2 = eta_eval(tree, {2}, 1.0);
    CHECK(m2.resolved);
    cplx want = tree.model().boundary_point(kGolden.legal_angle(2).turns());
    CHECK(std::abs(m2.embedded - want) < 1e-9);
}

TEST_CASE("deeper point addresses land inside their chain bubble") {
    BubbleTree& tree = qtree();
    ModelPoint mp = eta_eval(tree, {0, 0, 2}, 0.5);
    CHECK(mp.resolved);
    CHECK(tree.ensure({0}).winding_contains(mp.embedded));
    // Even address: the entry point (root) of the addressed bubble.
    ModelPoint root = eta_eval(tree, {0, 0, 2, 2}, 1.0);
    CHECK(root.resolved);
    CHECK(std::abs(root.embedded - tree.ensure({0, 0, 2}).root) < 1e-9);
}

TEST_CASE("the correspondence commutes with the dynamics along addresses") {
    BubbleTree& tree = qtree();
    const PolyMap f = tree.model().map();
    for (double rho : {0.4, 0.8}) {
        ModelPoint a = eta_eval(tree, {1, 1, 3}, rho);
        ModelPoint b = eta_eval(tree, pi_step({1, 1, 3}), rho);
        REQUIRE(a.resolved);
        REQUIRE(b.resolved);
        CHECK(std::abs(f.eval(a.embedded) - b.embedded) < 1e-5);
    }
}

TEST_CASE("locate recovers frozen addresses") {
    BubbleTree& tree = qtree();
    // The critical point: boundary angle 0 <-> address (0) at rho 1.
    ModelPoint mp = locate_point(tree, cplx(1.0, 0.0));
    CHECK(mp.resolved);
    CHECK(mp.rho == doctest::Approx(1.0));
    CHECK(mp.ma == MultiAngle{0});
    CHECK(mp.depth == 0);

    // The fixed point 0: disk center.
    ModelPoint c0 = locate_point(tree, cplx(0.0, 0.0));
    CHECK(c0.resolved);
    CHECK(c0.rho == doctest::Approx(0.0));
    CHECK(c0.depth == 0);

    // A generic interior disk point carries a real angle.
    cplx z = tree.model().point_at(0.6, 0.27);
    ModelPoint zi = locate_point(tree, z);
    CHECK(zi.resolved);
    CHECK(zi.rho == doctest::Approx(0.6).epsilon(1e-4));
    REQUIRE(zi.angle.has_value());
    CHECK(std::abs(*zi.angle - 0.27) < 1e-4);
}

TEST_CASE("locate and the correspondence are mutually inverse in bubbles") {
    BubbleTree& tree = qtree();
    cplx z = tree.bubble_point({0, 0, 1}, 0.55, 0.0);
    ModelPoint mp = locate_point(tree, z);
    REQUIRE(mp.resolved);
    CHECK(mp.depth >= 1);
    ModelPoint back = eta_transport(tree, mp);
    REQUIRE(back.resolved);
    CHECK(std::abs(back.embedded - z) < 1e-5);
}

TEST_CASE("locate flags escaping points") {
    BubbleTree& tree = qtree();
    CHECK_THROWS_AS(locate_point(tree, cplx(25.0, 0.0)), std::domain_error);
}

TEST_CASE("attach points locate as boundary junctions") {
    BubbleTree& tree = qtree();
    cplx v = tree.attach_point({0}, 1);
    ModelPoint mp = locate_point(tree, v);
    REQUIRE(mp.resolved);
    CHECK(mp.rho == doctest::Approx(1.0));
    CHECK(mp.depth >= 1);
    ModelPoint back = eta_transport(tree, mp);
    REQUIRE(back.resolved);
    CHECK(std::abs(back.embedded - v) < 1e-4);
}

TEST_CASE("quotient projection folds boundary angles at the critical involution") {
    BubbleTree& tree = qtree();
    // Boundary angle alpha and -alpha identify; canonical angle min(a, 1-a).
    ModelPoint a;
    a.ma = {};
    a.angle = 0.3;
    a.rho = 1.0;
    a.resolved = true;
    a.embedded = tree.model().boundary_point(0.3);
    ModelPoint pa = quotient_project(tree, a);
    CHECK(pa.quotient_canonical);
    REQUIRE(pa.angle.has_value());
    CHECK(*pa.angle == doctest::Approx(0.3).epsilon(1e-12));

    ModelPoint b = a;
    b.angle = 0.7;
    b.embedded = tree.model().boundary_point(0.7);
    ModelPoint pb = quotient_project(tree, b);
    REQUIRE(pb.angle.has_value());
    CHECK(*pb.angle == doctest::Approx(0.3).epsilon(1e-12));

    // Idempotence.
    ModelPoint paa = quotient_project(tree, pa);
    REQUIRE(paa.angle.has_value());
    CHECK(*paa.angle == doctest::Approx(*pa.angle).epsilon(1e-12));

    // Interior points are unchanged apart from the canonical flag.
    ModelPoint in;
    in.ma = {0};
    in.rho = 0.4;
    in.resolved = true;
    in.embedded = tree.model().point_at(0.4, 0.0);
    ModelPoint pin = quotient_project(tree, in);
    CHECK(pin.quotient_canonical);
    CHECK(std::abs(pin.embedded - in.embedded) < 1e-12);
    CHECK(pin.rho == doctest::Approx(0.4));
}

TEST_CASE("legal-ray boundary addresses project to their folded angle") {
    BubbleTree& tree = qtree();
    // Address (1) at rho 1: boundary angle -theta = 0.381966...; its fold is
    // min(alpha, 1-alpha) = 0.381966...
    ModelPoint mp = eta_eval(tree, {1}, 1.0);
    ModelPoint p = quotient_project(tree, mp);
    REQUIRE(p.angle.has_value());
    CHECK(*p.angle == doctest::Approx(0.3819660112501051).epsilon(1e-9));
}

TEST_CASE("parameter correspondence at the double critical point") {
    BubbleTree& tree = qtree();
    // c = 1 merges the critical points; the marked point is the boundary
    // critical point itself, which transports to the quadratic critical point.
    ModelPoint mp = phi(tree, kGolden, cplx(1.0, 0.0));
    REQUIRE(mp.resolved);
    CHECK(std::abs(mp.embedded - cplx(1.0, 0.0)) < 1e-6);
    CHECK(mp.rho == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("parameter correspondence rejects escaping parameters") {
    BubbleTree& tree = qtree();
    CHECK_THROWS_AS(phi(tree, kGolden, cplx(50.0, 0.0)), std::domain_error);
    CHECK_THROWS_AS(phi(tree, kGolden, cplx(0.0, 0.0)), std::domain_error);
}

TEST_CASE("symmetry residual vanishes at the odd cubic") {
    BubbleTree& tree = qtree();
    // c = -1 is its own reciprocal: the residual is zero by construction.
    double r = symmetry_residual(tree, kGolden, cplx(-1.0, 0.0));
    CHECK(r < 1e-9);
}

TEST_CASE("unreachable depth yields an unresolved prefix") {
    BubbleTree& tree = qtree();
    // Depth far beyond the built tree with the infinite-tail sentinel.
    ModelPoint mp = eta_eval(tree, {0, 0, 1, 1, 2, 2, 3, 3, 4, 4, 5}, RHO_INFINITE);
    CHECK(!mp.resolved);
    CHECK(std::isinf(mp.rho));
    // The embedded point is still a concrete stand-in (a resolved prefix root).
    CHECK(std::isfinite(mp.embedded.real()));
    CHECK(std::isfinite(mp.embedded.imag()));
}
