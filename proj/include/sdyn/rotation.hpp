#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sdyn/common.hpp"

namespace sdyn {

// Angle on the circle R/Z, stored in turns within [0, 1).
class Angle {
public:
    Angle() : turns_(0.0) {}
    static Angle from_turns(double t) { return Angle(frac01(t)); }
    double turns() const { return turns_; }
    cplx point() const { return unit(turns_); }

private:
    explicit Angle(double t) : turns_(t) {}
    double turns_;
};

// A bounded-type irrational rotation number given by an eventually periodic
// continued fraction [0; a1, a2, ...] = pre + repeating period. Immutable.
class RotationNumber {
public:
    // Build from the continued fraction of a quadratic surd in (0, 1).
    // `preperiod` may be empty; `period` must not be. All entries >= 1.
    static RotationNumber from_quadratic_surd(std::vector<int> preperiod,
                                              std::vector<int> period);

    // Golden mean (sqrt(5)-1)/2 = [0; 1, 1, 1, ...].
    static RotationNumber golden();
    // sqrt(2)/2 = [0; 1, 2, 2, 2, ...]; its multiplier is exp(pi*i*sqrt(2)).
    static RotationNumber sqrt2_over_2();

    // Parse "golden", "sqrt2over2", or "pre:period" CF syntax such as "1:2"
    // (preperiod [1], period [2]) or ":1" (empty preperiod).
    static RotationNumber parse(const std::string& text);

    double value() const { return value_; }
    // Largest continued-fraction coefficient (the bounded-type bound).
    int bound() const { return bound_; }
    const std::vector<int>& preperiod() const { return preperiod_; }
    const std::vector<int>& period() const { return period_; }

    // First n unrolled CF coefficients a_1..a_n.
    std::vector<int> cf_terms(int n) const;

    // Convergents p_1/q_1 ... p_n/q_n of the continued fraction. The
    // recurrence is seeded with p_0/q_0 = a_0/1 = 0/1 (a_0 = 0 because the
    // value lies in (0,1)); the seed itself is not returned, so denominators
    // are strictly increasing. Throws std::overflow_error if a denominator
    // would not fit in int64.
    std::vector<std::pair<std::int64_t, std::int64_t>> convergents(int n) const;

    // The angle (-m*theta) mod 1 carried by the m-th legal ray.
    Angle legal_angle(std::int64_t m) const;

    // e^{2 pi i theta}.
    cplx multiplier() const;

    std::string describe() const;

private:
    RotationNumber() = default;
    std::vector<int> preperiod_;
    std::vector<int> period_;
    double value_ = 0.0;
    int bound_ = 0;
};

}  // namespace sdyn
