#include "doctest.h"

#include <cstdint>
#include <stdexcept>

#include "sdyn/multiangle.hpp"

using namespace sdyn;

TEST_CASE("legality of multi-angle sequences") {
    CHECK(!check_multiangle({0}).has_value());
    CHECK(!check_multiangle({0, 0}).has_value());
    CHECK(!check_multiangle({0, 0, 1}).has_value());
    CHECK(!check_multiangle({2, 2, 3, 3, 5}).has_value());
    CHECK(!check_multiangle({1, 1, 4, 4, 7, 7, 9}).has_value());

    // Pair mismatch: entry 1 must equal entry 0.
    auto v = check_multiangle({0, 1});
    REQUIRE(v.has_value());
    CHECK(v->index == 1);

    // Non-increasing step: entry 2 must exceed entry 1.
    v = check_multiangle({1, 1, 1});
    REQUIRE(v.has_value());
    CHECK(v->index == 2);

    v = check_multiangle({2, 2, 1});
    REQUIRE(v.has_value());
    CHECK(v->index == 2);

    // Negative entries are illegal at the point they appear.
    v = check_multiangle({-1});
    REQUIRE(v.has_value());
    CHECK(v->index == 0);

    // Empty is illegal.
    CHECK(check_multiangle({}).has_value());

    CHECK_THROWS_AS(validate_multiangle({0, 1}), std::invalid_argument);
    CHECK_NOTHROW(validate_multiangle({3, 3, 4, 4, 9}));
}

TEST_CASE("angle shift map on frozen examples") {
    CHECK(pi_step({0, 0, 1}) == MultiAngle{0});
    CHECK(pi_step({1, 1}) == MultiAngle{0, 0});
    CHECK(pi_step({2, 2, 3, 3, 5}) == MultiAngle{1, 1, 2, 2, 4});
    CHECK(pi_step({1}) == MultiAngle{0});
    CHECK(pi_step({0, 0, 2, 2, 3}) == MultiAngle{1, 1, 2});
}

TEST_CASE("angle shift orbit reaches a terminal state in last+1 steps") {
    auto orbit = pi_orbit({0, 0, 1});
    REQUIRE(orbit.size() == 2);
    CHECK(orbit[0] == MultiAngle{0, 0, 1});
    CHECK(orbit[1] == MultiAngle{0});

    orbit = pi_orbit({1, 1});
    REQUIRE(orbit.size() == 2);
    CHECK(orbit[0] == MultiAngle{1, 1});
    CHECK(orbit[1] == MultiAngle{0, 0});

    orbit = pi_orbit({2, 2, 3, 3, 5});
    REQUIRE(orbit.size() == 6);
    CHECK(orbit[1] == MultiAngle{1, 1, 2, 2, 4});
    CHECK(orbit[5] == MultiAngle{0});

    // Terminal states are their own (length-1) orbits.
    CHECK(pi_orbit({0}).size() == 1);
    CHECK(pi_orbit({0, 0}).size() == 1);
}

TEST_CASE("orbit property: legality preserved, length = last entry + 1") {
    // Hand-rolled generator over a deterministic family of legal sequences.
    for (std::int64_t e0 = 0; e0 <= 3; ++e0) {
        for (std::int64_t d1 = 1; d1 <= 3; ++d1) {
            for (std::int64_t d2 = 1; d2 <= 3; ++d2) {
                MultiAngle ma = {e0, e0, e0 + d1, e0 + d1, e0 + d1 + d2};
                auto orbit = pi_orbit(ma);
                CHECK(orbit.size() == size_t(ma.back() + 1));
                for (const auto& state : orbit) {
                    CHECK(!check_multiangle(state).has_value());
                }
                auto& last = orbit.back();
                bool terminal = (last == MultiAngle{0}) || (last == MultiAngle{0, 0});
                CHECK(terminal);
            }
        }
    }
}

TEST_CASE("bubble address legality against a marked critical address") {
    // Without a marked address every legal odd sequence is allowed.
    CHECK(is_legal_bubble_address({0}));
    CHECK(is_legal_bubble_address({0, 0, 1}));

    // Even length is not a bubble address.
    CHECK_THROWS_AS(is_legal_bubble_address({0, 0}), std::invalid_argument);

    // A marked critical address forbids itself...
    MultiAngle crit = {0, 0, 2};
    CHECK(!is_legal_bubble_address({0, 0, 2}, crit));
    // ...any extension of it...
    CHECK(!is_legal_bubble_address({0, 0, 2, 2, 5}, crit));
    // ...and any address with a shift iterate of a prefix equal to it.
    CHECK(!is_legal_bubble_address({1, 1, 3}, crit));  // pi(1,1,3) = (0,0,2)
    // Unrelated addresses survive.
    CHECK(is_legal_bubble_address({0, 0, 1}, crit));
    CHECK(is_legal_bubble_address({1, 1, 2}, crit));
}

TEST_CASE("multi-angle streams") {
    auto s = MultiAngleStream::periodic_increments({1}, 8);
    CHECK(s.pair_value(0) == 0);
    CHECK(s.pair_value(1) == 1);
    CHECK(s.pair_value(4) == 4);
    CHECK(s.prefix(1) == MultiAngle{0});
    CHECK(s.prefix(2) == MultiAngle{0, 0, 1});
    CHECK(s.prefix(3) == MultiAngle{0, 0, 1, 1, 2});

    auto t = MultiAngleStream::periodic_increments({2, 1}, 8);
    CHECK(t.pair_value(0) == 0);
    CHECK(t.pair_value(1) == 2);
    CHECK(t.pair_value(2) == 3);
    CHECK(t.pair_value(3) == 5);
    CHECK(t.prefix(3) == MultiAngle{0, 0, 2, 2, 3});

    // Prefixes are always legal.
    for (size_t k = 1; k <= 6; ++k) {
        CHECK(!check_multiangle(t.prefix(k)).has_value());
    }

    CHECK_THROWS_AS(MultiAngleStream::periodic_increments({0}, 4), std::invalid_argument);
    CHECK_THROWS_AS(MultiAngleStream::periodic_increments({}, 4), std::invalid_argument);
}

TEST_CASE("periodic-increment streams shift with the advertised period") {
    // Pattern (2,1): period 3 under the angle shift. One full period consumes
    // one pair value per pattern entry, so a prefix drops two pair values.
    auto t = MultiAngleStream::periodic_increments({2, 1}, 10);
    MultiAngle cur = t.prefix(4);  // (0,0,2,2,3,3,5)
    for (int i = 0; i < 3; ++i) cur = pi_step(cur);
    CHECK(cur == t.prefix(2));

    // Pattern (1): period 1, one pair value consumed per step.
    auto s = MultiAngleStream::periodic_increments({1}, 10);
    CHECK(pi_step(s.prefix(3)) == s.prefix(2));
    CHECK(pi_step(s.prefix(2)) == s.prefix(1));
}
