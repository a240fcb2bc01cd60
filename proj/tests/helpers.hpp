#pragma once

// Test-only oracles and generators. Nothing here calls into the code paths it
// is used to check.

#include <random>
#include <vector>

#include "blowup/bilaurent.hpp"
#include "blowup/canonical_form.hpp"
#include "blowup/exact_linalg.hpp"

namespace testing_support {

using blowup::BiLaurent;
using blowup::GaussianRational;

inline GaussianRational q(long n, long d = 1) { return {mpq_class(mpz_class(n), mpz_class(d)), mpq_class(0)}; }
inline GaussianRational gq(long rn, long rd, long in, long id) { return {rn, rd, in, id}; }

inline BiLaurent mono(int u, int z, const GaussianRational& c = 1) { return BiLaurent::monomial(u, z, c); }

class Gen {
public:
    explicit Gen(unsigned seed) : rng_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

    GaussianRational scalar(long bound = 5) {
        return gq(integer(-bound, bound), integer(1, bound), integer(-bound, bound), integer(1, bound));
    }

    BiLaurent laurent(int terms, int max_u, int min_z, int max_z, long bound = 5) {
        BiLaurent f;
        for (int k = 0; k < terms; ++k)
            f.add_term(static_cast<int>(integer(0, max_u)), static_cast<int>(integer(min_z, max_z)), scalar(bound));
        return f;
    }

    /// A polynomial holomorphic in (z, u).
    BiLaurent holomorphic(int terms, int max_u, int max_z) { return laurent(terms, max_u, 0, max_z); }

    /// A v-holomorphic polynomial: terms z^m u^i with m <= i.
    BiLaurent v_holomorphic(int terms, int max_u) {
        BiLaurent f;
        for (int t = 0; t < terms; ++t) {
            int i = static_cast<int>(integer(0, max_u));
            f.add_term(i, static_cast<int>(integer(-3, i)), scalar());
        }
        return f;
    }

    blowup::CanonicalForm form(int j) {
        BiLaurent p;
        for (const auto& w : blowup::window(j))
            if (integer(0, 3) > 0)
                p.add_term(w.i, w.l, scalar(4));
        return {j, p};
    }

    std::mt19937& engine() { return rng_; }

private:
    std::mt19937 rng_;
};

/// Plain dense Gaussian elimination; returns the rank.
inline std::size_t dense_rank(std::vector<std::vector<GaussianRational>> a) {
    std::size_t rank = 0;
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][c].is_zero())
            ++piv;
        if (piv == rows)
            continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || a[r][c].is_zero())
                continue;
            GaussianRational f = a[r][c] / a[rank][c];
            for (std::size_t k = c; k < cols; ++k)
                a[r][k] -= f * a[rank][k];
        }
        ++rank;
    }
    return rank;
}

/// Product of 2x2 Laurent matrices, entry by entry.
inline blowup::LaurentMatrix2 matmul(const blowup::LaurentMatrix2& x, const blowup::LaurentMatrix2& y) {
    return {x.m00 * y.m00 + x.m01 * y.m10, x.m00 * y.m01 + x.m01 * y.m11, x.m10 * y.m00 + x.m11 * y.m10,
            x.m10 * y.m01 + x.m11 * y.m11};
}

}  // namespace testing_support
