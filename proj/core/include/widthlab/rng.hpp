#pragma once

#include <cmath>
#include <cstdint>

#include "widthlab/vec.hpp"

namespace widthlab {

/// Counter-based random stream. Every draw is a pure function of
/// (seed, stream, counter), so results do not depend on evaluation order
/// or thread count.
namespace rng {

inline std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t bits(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    std::uint64_t h = mix(seed ^ 0x6a09e667f3bcc909ULL);
    h = mix(h ^ stream);
    h = mix(h ^ counter);
    return h;
}

/// Uniform double in [0, 1).
inline double u01(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    return static_cast<double>(bits(seed, stream, counter) >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter,
                      double lo, double hi) {
    return lo + (hi - lo) * u01(seed, stream, counter);
}

/// Standard normal via Box-Muller on two sub-counters.
inline double gaussian(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    double u1 = u01(seed, stream, counter * 2 + 0);
    double u2 = u01(seed, stream, counter * 2 + 1);
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

/// Uniform direction on the unit sphere of dimension N-1.
template <int N>
inline Vec<N> unit_dir(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    Vec<N> v;
    for (;;) {
        for (int i = 0; i < N; ++i)
            v[i] = gaussian(seed, stream, counter * N + static_cast<std::uint64_t>(i));
        double n = norm(v);
        if (n > 1e-8) return v / n;
        counter += 0x100000000ULL;  // astronomically unlikely retry
    }
}

/// Uniform point inside an axis-aligned box.
template <int N>
inline Vec<N> box_point(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter,
                        const Vec<N>& lo, const Vec<N>& hi) {
    Vec<N> v;
    for (int i = 0; i < N; ++i)
        v[i] = uniform(seed, stream, counter * N + static_cast<std::uint64_t>(i), lo[i], hi[i]);
    return v;
}

}  // namespace rng
}  // namespace widthlab
