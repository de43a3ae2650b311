#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "sdyn/rotation.hpp"

using namespace sdyn;

namespace {
constexpr double kGoldenTheta = 0.6180339887498949;      // (sqrt(5)-1)/2
constexpr double kSqrt2Over2 = 0.7071067811865476;       // sqrt(2)/2
}  // namespace

TEST_CASE("golden rotation number value and continued fraction") {
    RotationNumber rot = RotationNumber::golden();
    CHECK(rot.value() == doctest::Approx(kGoldenTheta).epsilon(1e-15));
    CHECK(rot.preperiod().empty());
    CHECK(rot.period() == std::vector<int>{1});
    auto terms = rot.cf_terms(6);
    REQUIRE(terms.size() == 6);
    for (int t : terms) CHECK(t == 1);
}

TEST_CASE("sqrt(2)/2 rotation number value and continued fraction") {
    RotationNumber rot = RotationNumber::sqrt2_over_2();
    CHECK(rot.value() == doctest::Approx(kSqrt2Over2).epsilon(1e-15));
    auto terms = rot.cf_terms(5);
    REQUIRE(terms.size() == 5);
    CHECK(terms[0] == 1);
    CHECK(terms[1] == 2);
    CHECK(terms[2] == 2);
    CHECK(terms[3] == 2);
    CHECK(terms[4] == 2);
}

TEST_CASE("golden convergents") {
    auto conv = RotationNumber::golden().convergents(5);
    REQUIRE(conv.size() == 5);
    CHECK(conv[0] == std::pair<std::int64_t, std::int64_t>{1, 1});
    CHECK(conv[1] == std::pair<std::int64_t, std::int64_t>{1, 2});
    CHECK(conv[2] == std::pair<std::int64_t, std::int64_t>{2, 3});
    CHECK(conv[3] == std::pair<std::int64_t, std::int64_t>{3, 5});
    CHECK(conv[4] == std::pair<std::int64_t, std::int64_t>{5, 8});
}

TEST_CASE("sqrt(2)/2 convergents") {
    auto conv = RotationNumber::sqrt2_over_2().convergents(5);
    REQUIRE(conv.size() == 5);
    CHECK(conv[0] == std::pair<std::int64_t, std::int64_t>{1, 1});
    CHECK(conv[1] == std::pair<std::int64_t, std::int64_t>{2, 3});
    CHECK(conv[2] == std::pair<std::int64_t, std::int64_t>{5, 7});
    CHECK(conv[3] == std::pair<std::int64_t, std::int64_t>{12, 17});
    CHECK(conv[4] == std::pair<std::int64_t, std::int64_t>{29, 41});
}

TEST_CASE("convergent denominators grow and approximation error shrinks") {
    for (auto rot : {RotationNumber::golden(), RotationNumber::sqrt2_over_2(),
                     RotationNumber::from_quadratic_surd({2}, {1, 3})}) {
        auto conv = rot.convergents(10);
        REQUIRE(conv.size() == 10);
        double prev_err = 1.0;
        std::int64_t prev_q = 0;
        for (auto [p, q] : conv) {
            CHECK(q > prev_q);
            double err = std::abs(rot.value() - double(p) / double(q));
            // Classical bound |theta - p/q| < 1/q^2.
            CHECK(err < 1.0 / (double(q) * double(q)));
            CHECK(err < prev_err + 1e-18);
            prev_q = q;
            prev_err = err;
        }
    }
}

TEST_CASE("legal angles of the golden rotation") {
    RotationNumber rot = RotationNumber::golden();
    CHECK(rot.legal_angle(0).turns() == doctest::Approx(0.0));
    CHECK(rot.legal_angle(1).turns() == doctest::Approx(0.3819660112501051).epsilon(1e-14));
    CHECK(rot.legal_angle(2).turns() == doctest::Approx(0.7639320225002102).epsilon(1e-14));
    // frac(-m theta) stays in [0, 1).
    for (std::int64_t m = 0; m < 50; ++m) {
        double t = rot.legal_angle(m).turns();
        CHECK(t >= 0.0);
        CHECK(t < 1.0);
    }
}

TEST_CASE("multiplier lies on the unit circle at angle theta") {
    RotationNumber rot = RotationNumber::golden();
    cplx lam = rot.multiplier();
    CHECK(std::abs(lam) == doctest::Approx(1.0).epsilon(1e-15));
    // Independent evaluation of exp(2 pi i theta) for theta = (sqrt 5 - 1)/2.
    double two_pi_theta = M_PI * (std::sqrt(5.0) - 1.0);
    CHECK(lam.real() == doctest::Approx(std::cos(two_pi_theta)).epsilon(1e-14));
    CHECK(lam.imag() == doctest::Approx(std::sin(two_pi_theta)).epsilon(1e-14));
    CHECK(lam.real() == doctest::Approx(-0.7373688780783193).epsilon(1e-14));
    CHECK(lam.imag() == doctest::Approx(-0.6754902942615238).epsilon(1e-14));
}

TEST_CASE("angle turn/point conversions agree") {
    Angle a = Angle::from_turns(0.25);
    CHECK(a.point().real() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(a.point().imag() == doctest::Approx(1.0).epsilon(1e-15));
    Angle b = Angle::from_turns(1.25);
    CHECK(b.turns() == doctest::Approx(0.25).epsilon(1e-15));
    Angle c = Angle::from_turns(-0.25);
    CHECK(c.turns() == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("parsing rotation specifications") {
    CHECK(RotationNumber::parse("golden").value() ==
          doctest::Approx(kGoldenTheta).epsilon(1e-15));
    CHECK(RotationNumber::parse("sqrt2over2").value() ==
          doctest::Approx(kSqrt2Over2).epsilon(1e-15));

    // ":1" is the purely periodic all-ones expansion (golden).
    CHECK(RotationNumber::parse(":1").value() ==
          doctest::Approx(kGoldenTheta).epsilon(1e-15));

    // "1:2" means [0; 1, 2, 2, 2, ...] = sqrt(2)/2.
    CHECK(RotationNumber::parse("1:2").value() ==
          doctest::Approx(kSqrt2Over2).epsilon(1e-15));

    CHECK_THROWS_AS(RotationNumber::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(RotationNumber::parse("nonsense"), std::invalid_argument);
    CHECK_THROWS_AS(RotationNumber::parse("1:"), std::invalid_argument);
    CHECK_THROWS_AS(RotationNumber::parse("1:0"), std::invalid_argument);
    CHECK_THROWS_AS(RotationNumber::parse("-1:2"), std::invalid_argument);
}

TEST_CASE("quadratic surd constructor satisfies its own periodicity") {
    // theta = [0; 2, (1, 3)] — tail repeats (1, 3).
    RotationNumber rot = RotationNumber::from_quadratic_surd({2}, {1, 3});
    auto terms = rot.cf_terms(9);
    REQUIRE(terms.size() == 9);
    CHECK(terms[0] == 2);
    for (size_t i = 1; i < terms.size(); ++i) {
        CHECK(terms[i] == ((i - 1) % 2 == 0 ? 1 : 3));
    }
    CHECK(rot.value() > 0.0);
    CHECK(rot.value() < 1.0);
    CHECK(rot.bound() >= 3);
    CHECK_THROWS_AS(RotationNumber::from_quadratic_surd({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(RotationNumber::from_quadratic_surd({0}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(RotationNumber::from_quadratic_surd({1}, {0}), std::invalid_argument);
}

TEST_CASE("bounded-type bound is the max continued fraction term") {
    CHECK(RotationNumber::golden().bound() == 1);
    CHECK(RotationNumber::sqrt2_over_2().bound() == 2);
    CHECK(RotationNumber::from_quadratic_surd({5}, {1, 2}).bound() == 5);
}

TEST_CASE("convergent request beyond the overflow horizon throws") {
    CHECK_THROWS_AS(RotationNumber::golden().convergents(200), std::overflow_error);
}

TEST_CASE("describe mentions the continued fraction") {
    std::string d = RotationNumber::golden().describe();
    CHECK(d.find("1") != std::string::npos);
}
