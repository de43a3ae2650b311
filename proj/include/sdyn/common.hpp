#pragma once

#include <complex>
#include <cmath>
#include <cstdint>

namespace sdyn {

using cplx = std::complex<double>;

inline constexpr double TAU = 6.283185307179586476925286766559;

// Reduce a real number of turns into [0, 1).
inline double frac01(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f -= 1.0;  // guard against floor rounding at negative epsilons
    return f;
}

// Distance between two angles measured in turns, result in [0, 1/2].
inline double angle_dist(double a, double b) {
    double d = frac01(a - b);
    return d > 0.5 ? 1.0 - d : d;
}

inline cplx unit(double turns) {
    return cplx(std::cos(TAU * turns), std::sin(TAU * turns));
}

}  // namespace sdyn
