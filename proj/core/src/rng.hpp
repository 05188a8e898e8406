#pragma once

// Deterministic sampling helpers on top of mt19937_64. The standard
// distributions are implementation-defined, so everything derived from the
// raw engine output is spelled out here to keep seeded runs reproducible
// across toolchains.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace pumpsim::rng {

inline double uniform01(std::mt19937_64 &g)
{
    return static_cast<double>(g() >> 11) * 0x1.0p-53; // [0, 1)
}

inline double uniform(std::mt19937_64 &g, double lo, double hi)
{
    return lo + (hi - lo) * uniform01(g);
}

inline double exponential_gap(std::mt19937_64 &g, double rate_per_ms)
{
    return -std::log1p(-uniform01(g)) / rate_per_ms;
}

inline double standard_normal(std::mt19937_64 &g)
{
    const double u1 = 1.0 - uniform01(g); // (0, 1]
    const double u2 = uniform01(g);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

inline std::size_t index(std::mt19937_64 &g, std::size_t n)
{
    return static_cast<std::size_t>(g() % n);
}

template <typename T>
void shuffle(std::vector<T> &v, std::mt19937_64 &g)
{
    for (std::size_t i = v.size(); i > 1; --i) {
        std::swap(v[i - 1], v[index(g, i)]);
    }
}

} // namespace pumpsim::rng
