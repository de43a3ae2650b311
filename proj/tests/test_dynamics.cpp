#include "doctest.h"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "sdyn/dynamics.hpp"
#include "sdyn/rotation.hpp"

using namespace sdyn;

namespace {
const cplx kGoldenLambda = RotationNumber::golden().multiplier();
}

TEST_CASE("quadratic normalization: coefficients and critical point") {
    QuadraticMap q(kGoldenLambda);
    PolyMap f = q.poly();
    CHECK(f.lambda == kGoldenLambda);
    CHECK(std::abs(f.a2 - (-kGoldenLambda / 2.0)) < 1e-15);
    CHECK(std::abs(f.a3) == 0.0);
    CHECK(f.degree() == 2);

    auto crit = critical_points(f);
    REQUIRE(crit.size() == 1);
    CHECK(std::abs(crit[0] - cplx(1.0, 0.0)) < 1e-12);

    // f(z) = lambda z (1 - z/2) evaluated independently.
    cplx z(0.3, -0.2);
    CHECK(std::abs(f.eval(z) - kGoldenLambda * z * (1.0 - z / 2.0)) < 1e-15);

    // Deck symmetry f(2 - z) = f(z).
    CHECK(std::abs(f.eval(2.0 - z) - f.eval(z)) < 1e-14);
}

TEST_CASE("cubic normalization: critical points are exactly 1 and c") {
    cplx c(0.4, 0.7);
    CubicMap pc(kGoldenLambda, c);
    PolyMap f = pc.poly();
    CHECK(f.degree() == 3);
    // f'(1) = 0 and f'(c) = 0.
    CHECK(std::abs(f.deriv(cplx(1.0, 0.0))) < 1e-13);
    CHECK(std::abs(f.deriv(c)) < 1e-13);
    auto crit = critical_points(f);
    REQUIRE(crit.size() == 2);
    double d1 = std::abs(crit[0] - cplx(1.0, 0.0)) + std::abs(crit[1] - c);
    double d2 = std::abs(crit[1] - cplx(1.0, 0.0)) + std::abs(crit[0] - c);
    CHECK(std::min(d1, d2) < 1e-12);

    // Coefficient closed forms.
    CHECK(std::abs(f.a2 - (-kGoldenLambda * (1.0 + 1.0 / c) / 2.0)) < 1e-15);
    CHECK(std::abs(f.a3 - kGoldenLambda / (3.0 * c)) < 1e-15);
}

TEST_CASE("fixed point of the quadratic and its multiplier") {
    PolyMap f = QuadraticMap(kGoldenLambda).poly();
    cplx x = 2.0 * (kGoldenLambda - 1.0) / kGoldenLambda;
    CHECK(std::abs(f.eval(x) - x) < 1e-14);
    CHECK(std::abs(f.deriv(x) - (2.0 - kGoldenLambda)) < 1e-14);
    CHECK(std::abs(2.0 - kGoldenLambda) > 1.0);  // repelling
}

TEST_CASE("preimages satisfy Vieta relations and map forward exactly") {
    PolyMap q = QuadraticMap(kGoldenLambda).poly();
    cplx w(0.17, 0.05);
    auto pre = preimages(q, w);
    REQUIRE(pre.size() == 2);
    // a2 z^2 + lambda z - w = 0: sum = -lambda/a2, product = -w/a2.
    CHECK(std::abs(pre[0] + pre[1] - (-q.lambda / q.a2)) < 1e-12);
    CHECK(std::abs(pre[0] * pre[1] - (-w / q.a2)) < 1e-12);
    for (cplx z : pre) CHECK(std::abs(q.eval(z) - w) < 1e-10);

    PolyMap f = CubicMap(kGoldenLambda, cplx(0.5, 0.3)).poly();
    auto pre3 = preimages(f, w);
    REQUIRE(pre3.size() == 3);
    cplx sum = pre3[0] + pre3[1] + pre3[2];
    cplx prod = pre3[0] * pre3[1] * pre3[2];
    CHECK(std::abs(sum - (-f.a2 / f.a3)) < 1e-10);
    CHECK(std::abs(prod - (w / f.a3)) < 1e-10);
    for (cplx z : pre3) CHECK(std::abs(f.eval(z) - w) < 1e-9);
}

TEST_CASE("preimage residual property over a deterministic grid") {
    PolyMap f = CubicMap(kGoldenLambda, cplx(-0.8, 0.45)).poly();
    for (int i = -2; i <= 2; ++i) {
        for (int j = -2; j <= 2; ++j) {
            cplx w(0.61 * i, 0.47 * j);
            auto pre = preimages(f, w);
            REQUIRE(pre.size() == 3);
            for (cplx z : pre) {
                CHECK(std::abs(f.eval(z) - w) < 1e-8 * std::max(1.0, std::abs(w)));
            }
        }
    }
}

TEST_CASE("iterate composes eval") {
    PolyMap f = QuadraticMap(kGoldenLambda).poly();
    cplx z(0.21, 0.11);
    CHECK(std::abs(f.iterate(z, 0) - z) == 0.0);
    CHECK(std::abs(f.iterate(z, 1) - f.eval(z)) == 0.0);
    CHECK(std::abs(f.iterate(z, 3) - f.eval(f.eval(f.eval(z)))) < 1e-15);
}

TEST_CASE("parameter inversion c -> 1/c via a linear conjugacy") {
    cplx c(0.37, 0.82);
    auto conj = conjugate_parameter(kGoldenLambda, c);
    CHECK(std::abs(conj.c_out - 1.0 / c) < 1e-14);
    CHECK(std::abs(conj.scale - 1.0 / c) < 1e-14);
    CHECK(conj.residual < 1e-10);

    // Direct check: A(z) = z/c sends p_c dynamics to p_{1/c} dynamics.
    PolyMap fc = CubicMap(kGoldenLambda, c).poly();
    PolyMap finv = CubicMap(kGoldenLambda, 1.0 / c).poly();
    for (cplx z : {cplx(0.2, 0.1), cplx(-0.5, 0.4), cplx(1.1, -0.3)}) {
        CHECK(std::abs(fc.eval(z) / c - finv.eval(z / c)) < 1e-12);
    }
}

TEST_CASE("bridge between the unmarked and marked cubic families") {
    cplx c(0.6, 0.35);
    cplx a = cubic_to_figone(kGoldenLambda, c);
    // Invariance under c -> 1/c.
    CHECK(std::abs(a - cubic_to_figone(kGoldenLambda, 1.0 / c)) < 1e-13);
    // Closed form (3 lambda / 4)(c + 2 + 1/c).
    CHECK(std::abs(a - 0.75 * kGoldenLambda * (c + 2.0 + 1.0 / c)) < 1e-14);

    // Round trip: the recovered marked parameter is c or 1/c.
    FigOneMap g(kGoldenLambda, a);
    auto back = figone_to_cubic(g);
    double match = std::min(std::abs(back.c - c), std::abs(back.c - 1.0 / c));
    CHECK(match < 1e-9);
    CHECK(back.residual < 1e-9);

    // Double critical point a = 3 lambda collapses to c = 1.
    auto dbl = figone_to_cubic(FigOneMap(kGoldenLambda, 3.0 * kGoldenLambda));
    CHECK(std::abs(dbl.c - cplx(1.0, 0.0)) < 1e-7);
}

TEST_CASE("unmarked family map evaluates as lambda z + sqrt(a) z^2 + z^3") {
    cplx a(1.3, -0.7);
    FigOneMap g(kGoldenLambda, a);
    PolyMap f = g.poly();
    CHECK(std::abs(f.lambda - kGoldenLambda) < 1e-15);
    CHECK(std::abs(f.a2 * f.a2 - a) < 1e-13);  // a2 = principal sqrt(a)
    CHECK(std::abs(f.a3 - cplx(1.0, 0.0)) < 1e-15);
}

TEST_CASE("escape time counts the first exit") {
    PolyMap f = QuadraticMap(kGoldenLambda).poly();
    // Far starting point: already outside.
    auto r0 = escape_time(f, cplx(100.0, 0.0), 50.0, 100);
    CHECK(r0.escaped);
    CHECK(r0.iterations == 0);
    // The fixed point 0 never escapes.
    auto r1 = escape_time(f, cplx(0.0, 0.0), 4.0, 2000);
    CHECK(!r1.escaped);
    // A point slightly outside escapes in a bounded number of steps.
    auto r2 = escape_time(f, cplx(6.0, 0.0), 4.0, 100);
    CHECK(r2.escaped);
    CHECK(r2.iterations <= 3);
    CHECK_THROWS_AS(escape_time(f, cplx(0, 0), 1.0, 100), std::invalid_argument);
    CHECK_THROWS_AS(escape_time(f, cplx(0, 0), 4.0, 0), std::invalid_argument);
}

TEST_CASE("degree-3 fraction with two exterior zeros restricts to the circle") {
    BlaschkeFraction B(0.37, cplx(3.0, 0.0), cplx(2.0, 2.0));
    for (double x : {0.0, 0.13, 0.35, 0.57, 0.79, 0.93}) {
        cplx z = std::polar(1.0, 2.0 * M_PI * x);
        CHECK(std::abs(std::abs(B.eval(z)) - 1.0) < 1e-12);
        double y = B.circle_image(x);
        CHECK(y >= 0.0);
        CHECK(y < 1.0);
        CHECK(std::abs(std::polar(1.0, 2.0 * M_PI * y) - B.eval(z)) < 1e-10);
    }
    // Interior points with |p|,|q| > 1: zeros of B inside are only z = 0 (triple).
    CHECK(std::abs(B.eval(cplx(0, 0))) == 0.0);
    CHECK_THROWS_AS(BlaschkeFraction(0.1, cplx(0.5, 0.0), cplx(2.0, 0.0)),
                    std::invalid_argument);
}

TEST_CASE("rotation number estimator is exact for rigid rotations") {
    const double theta = RotationNumber::golden().value();
    auto rigid = [theta](double x) { return std::fmod(x + theta, 1.0); };
    double est = circle_rotation_number(rigid, 20000);
    CHECK(std::abs(est - theta) < 1e-9);

    const double theta2 = 0.2137;
    auto rigid2 = [theta2](double x) { return std::fmod(x + theta2, 1.0); };
    CHECK(std::abs(circle_rotation_number(rigid2, 20000) - theta2) < 1e-9);
}

TEST_CASE("rotation number responds monotonically to the twist parameter") {
    // Zeros of modulus 5 keep the two Poisson peaks at 1.5, a quarter turn
    // apart, so the circle derivative 3 - K_p - K_q stays above 0.46 and the
    // restriction is an analytic circle diffeomorphism.
    cplx p(5.0, 0.0), q(0.0, 5.0);
    double r1 = circle_rotation_number(BlaschkeFraction(0.2, p, q));
    double r2 = circle_rotation_number(BlaschkeFraction(0.6, p, q));
    CHECK(r1 >= 0.0);
    CHECK(r1 <= 1.0);
    CHECK(r2 >= 0.0);
    CHECK(r2 <= 1.0);
    CHECK(r1 != doctest::Approx(r2).epsilon(1e-6));
}

TEST_CASE("tuning the twist hits a target rotation number") {
    // Same verified-diffeomorphism pair as above; with a monotone circle map
    // the weighted orbit average pins the rotation number to ~1e-11.
    cplx p(5.0, 0.0), q(0.0, 5.0);
    const double target = RotationNumber::golden().value();
    double t = tune_blaschke_parameter(p, q, target, 1e-10, 20000);
    CHECK(t >= 0.0);
    CHECK(t < 1.0);
    double got = circle_rotation_number(BlaschkeFraction(t, p, q), 40000);
    CHECK(std::abs(got - target) < 1e-6);
}
