#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "blowup/gaussian_rational.hpp"

namespace blowup::detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x2545f4914f6cdd1dULL;
    for (std::uint64_t p : parts)
        h = splitmix64(h ^ splitmix64(p));
    return h;
}

// Distributions are spelled out by hand: std::uniform_int_distribution is
// implementation-defined and would break cross-platform reproducibility.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    long uniform(long lo, long hi) {
        auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<long>(engine_() % span);
    }

    /// n/d with |n| <= bound, 1 <= d <= bound.
    mpq_class rational(long bound) {
        long n = uniform(-bound, bound);
        long d = uniform(1, bound);
        mpq_class q{mpz_class(n), mpz_class(d)};
        q.canonicalize();
        return q;
    }

    GaussianRational gaussian(long bound) { return {rational(bound), rational(bound)}; }

    GaussianRational nonzero_gaussian(long bound) {
        for (;;) {
            GaussianRational g = gaussian(bound);
            if (!g.is_zero())
                return g;
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace blowup::detail
