#pragma once

#include <doctest.h>

#include <random>

// Tight default: the closed forms are exact arithmetic, so cross-checks agree
// to rounding error, not to statistical precision.
inline doctest::Approx approx(double expected, double rel = 1e-12) {
    return doctest::Approx(expected).epsilon(rel);
}

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}
