#pragma once

#include <cmath>
#include <cstdint>

#include "doctest.h"

// |a - b| <= tol * max(|a|, |b|, floor)
inline bool close_rel(double a, double b, double tol, double floor = 1e-30) {
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), floor});
}

#define CHECK_REL(a, b, tol) CHECK_MESSAGE(close_rel((a), (b), (tol)), (a), " vs ", (b))

// Small deterministic generator for property-style sweeps.
struct Lcg {
    std::uint64_t state = 0x2545F4914F6CDD1DULL;
    std::uint64_t next() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return state >> 11;
    }
    // uniform in [lo, hi)
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(next() % (1u << 24)) / double(1u << 24));
    }
    // dyadic rational i/16 with |i| < 64; k * c / k is exact for these
    double dyadic() {
        const auto i = static_cast<std::int64_t>(next() % 127) - 63;
        return static_cast<double>(i) / 16.0;
    }
};
