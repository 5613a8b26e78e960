// Shared helpers for the test suites: a fixed default seed (overridable via
// NASHTORIC_TEST_SEED) and random cone generators.

#pragma once

#include <cstdlib>
#include <random>
#include <vector>

#include "nashtoric/cone.hpp"
#include "nashtoric/int_linalg.hpp"

namespace testutil {

inline std::uint64_t test_seed() {
    if (const char* s = std::getenv("NASHTORIC_TEST_SEED")) return std::strtoull(s, nullptr, 10);
    return 0x5eed0001ULL;
}

inline nashtoric::Vec random_vec(std::mt19937_64& rng, int n, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    nashtoric::Vec v((std::size_t)n);
    for (int i = 0; i < n; ++i) v[(std::size_t)i] = nashtoric::Int(d(rng));
    return v;
}

// Random valid cone of the given rank, retrying until make_cone accepts.
inline nashtoric::Cone random_cone(std::mt19937_64& rng, int rank, int extra_rays,
                                   int bound) {
    for (;;) {
        std::vector<nashtoric::Vec> rays;
        for (int i = 0; i < rank + extra_rays; ++i)
            rays.push_back(random_vec(rng, rank, -bound, bound));
        try {
            return nashtoric::make_cone(rays, rank);
        } catch (const std::invalid_argument&) {
        }
    }
}

// Random lattice point of the cone: nonnegative combination of its rays.
inline nashtoric::Vec random_point_in(std::mt19937_64& rng, const nashtoric::Cone& c,
                                      int coeff_bound) {
    std::uniform_int_distribution<int> d(0, coeff_bound);
    nashtoric::Vec v((std::size_t)c.rank, nashtoric::Int(0));
    for (const nashtoric::Vec& r : c.rays)
        v = nashtoric::vec_add(v, nashtoric::vec_scale(nashtoric::Int(d(rng)), r));
    return v;
}

}  // namespace testutil
