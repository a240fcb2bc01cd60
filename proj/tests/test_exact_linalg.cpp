#include <doctest.h>

#include "blowup/exact_linalg.hpp"
#include "helpers.hpp"

using namespace blowup;
using testing_support::Gen;
using testing_support::q;

namespace {

ExactMatrix random_matrix(Gen& g, std::size_t rows, std::size_t cols, int density) {
    ExactMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (g.integer(0, 9) < density)
                m.set(r, c, g.scalar(3));
    return m;
}

// Low-rank matrices come from products of thin random factors.
ExactMatrix low_rank_matrix(Gen& g, std::size_t rows, std::size_t cols, std::size_t inner) {
    std::vector<Vector> left(rows, Vector(inner)), right(inner, Vector(cols));
    for (auto& row : left)
        for (auto& x : row)
            x = g.integer(0, 2) ? g.scalar(3) : GaussianRational{};
    for (auto& row : right)
        for (auto& x : row)
            x = g.scalar(3);
    ExactMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            GaussianRational acc;
            for (std::size_t k = 0; k < inner; ++k)
                acc += left[r][k] * right[k][c];
            m.set(r, c, acc);
        }
    return m;
}

std::vector<Vector> dense(const ExactMatrix& m) {
    std::vector<Vector> out(m.rows(), Vector(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            out[r][c] = m.at(r, c);
    return out;
}

}  // namespace

TEST_CASE("nullspace examples") {
    ExactMatrix id = ExactMatrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(nullspace(id).empty());

    ExactMatrix zero(2, 2);
    CHECK(nullspace(zero).size() == 2);

    ExactMatrix ones = ExactMatrix::from_rows({{1, 1}, {1, 1}});
    auto basis = nullspace(ones);
    REQUIRE(basis.size() == 1);
    // Any basis of this kernel is a multiple of (1, -1).
    Vector v = to_dense(basis[0], 2);
    CHECK(v[0] == -v[1]);
    CHECK_FALSE(v[0].is_zero());
}

TEST_CASE("nullspace vectors are exact solutions and rank-nullity holds") {
    Gen g(23);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t rows = static_cast<std::size_t>(g.integer(1, 7));
        const std::size_t cols = static_cast<std::size_t>(g.integer(1, 7));
        ExactMatrix m = trial % 2 ? random_matrix(g, rows, cols, static_cast<int>(g.integer(2, 8)))
                                  : low_rank_matrix(g, rows, cols, static_cast<std::size_t>(g.integer(1, 3)));
        auto basis = nullspace(m);
        for (const auto& v : basis)
            CHECK(m.apply(v).empty());
        const std::size_t oracle_rank = testing_support::dense_rank(dense(m));
        CHECK(basis.size() + oracle_rank == cols);
        CHECK(rank(m) == oracle_rank);
    }
}

TEST_CASE("nullspace basis is indexed by free columns in increasing order") {
    ExactMatrix m = ExactMatrix::from_rows({{1, 2, 0, 3}, {0, 0, 1, 4}});
    auto basis = nullspace(m);
    REQUIRE(basis.size() == 2);
    for (const auto& v : basis) {
        std::size_t ones = 0;
        for (const auto& e : v)
            if (e.value.is_one())
                ++ones;
        CHECK(ones >= 1);
        CHECK(m.apply(v).empty());
    }
    // Deterministic: the same matrix gives the same basis.
    CHECK(nullspace(m) == basis);
}

TEST_CASE("solve finds particular solutions and detects inconsistency") {
    ExactMatrix m = ExactMatrix::from_rows({{1, 1}, {1, -1}});
    auto x = solve(m, {q(3), q(1)});
    REQUIRE(x);
    CHECK((*x)[0] == q(2));
    CHECK((*x)[1] == q(1));

    ExactMatrix singular = ExactMatrix::from_rows({{1, 1}, {2, 2}});
    CHECK_FALSE(solve(singular, {q(1), q(3)}));
    auto y = solve(singular, {q(1), q(2)});
    REQUIRE(y);
    CHECK(singular.apply(*y) == Vector{q(1), q(2)});

    Gen g(29);
    for (int trial = 0; trial < 40; ++trial) {
        ExactMatrix a = low_rank_matrix(g, 5, 6, 3);
        Vector x0(6);
        for (auto& c : x0)
            c = g.scalar(3);
        Vector rhs = a.apply(x0);
        auto sol = solve(a, rhs);
        REQUIRE(sol);
        CHECK(a.apply(*sol) == rhs);
    }
}

TEST_CASE("matrix validation") {
    CHECK_THROWS_AS(ExactMatrix(2, 0), std::invalid_argument);
    ExactMatrix m(1, 3);
    CHECK_THROWS_AS(m.append_row({{5, q(1)}}), std::invalid_argument);
    CHECK_THROWS_AS(m.append_row({{1, q(1)}, {0, q(1)}}), std::invalid_argument);
    CHECK_THROWS_AS(m.at(0, 3), std::out_of_range);
    m.set(0, 1, q(2));
    m.set(0, 1, q(0));
    CHECK(m.row(0).empty());
}

TEST_CASE("quadratic_vanishes_on_span examples") {
    QuadraticForm xy(2);
    xy.add(0, 1, 1);
    CHECK(quadratic_vanishes_on_span(xy, {{{0, q(1)}}}).vanishes);

    SpanVanishing both = quadratic_vanishes_on_span(xy, {{{0, q(1)}}, {{1, q(1)}}});
    CHECK_FALSE(both.vanishes);
    REQUIRE(both.witness);
    CHECK(to_dense(*both.witness, 2) == Vector{q(1), q(1)});
    CHECK(xy(*both.witness) == q(1));

    QuadraticForm xx(2);
    xx.add(0, 0, 1);
    CHECK(quadratic_vanishes_on_span(xx, {{{1, q(1)}}}).vanishes);
    CHECK(xx(Vector{q(3), q(5)}) == q(9));
}

TEST_CASE("quadratic forms are homogeneous of degree two") {
    Gen g(31);
    QuadraticForm f(4);
    f.add(0, 3, g.scalar()).add(1, 2, g.scalar()).add(2, 2, g.scalar());
    for (int k = 0; k < 30; ++k) {
        Vector x{g.scalar(), g.scalar(), g.scalar(), g.scalar()};
        GaussianRational lambda = g.scalar();
        Vector lx = x;
        for (auto& c : lx)
            c *= lambda;
        CHECK(f(lx) == lambda * lambda * f(x));
        CHECK(f(to_sparse(x)) == f(x));
    }
}

TEST_CASE("polarization agrees with exhaustive grid evaluation") {
    // Oracle: evaluate q on every combination with coefficients in [-2, 2]
    // of up to four basis vectors.
    Gen g(37);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t dim = 5;
        QuadraticForm f(dim);
        int kind = static_cast<int>(g.integer(0, 2));
        if (kind == 0) {
            f.add(0, 3, 1).add(1, 2, -1);  // determinant-like
        } else if (kind == 1) {
            f.add(0, 0, 1).add(1, 1, 1);
        } else {
            f.add(static_cast<std::size_t>(g.integer(0, 4)), static_cast<std::size_t>(g.integer(0, 4)), g.scalar());
        }
        const std::size_t k = static_cast<std::size_t>(g.integer(1, 4));
        std::vector<SparseVector> basis;
        for (std::size_t b = 0; b < k; ++b) {
            Vector v(dim);
            for (auto& x : v)
                if (g.integer(0, 2) == 0)
                    x = q(g.integer(-2, 2));
            basis.push_back(to_sparse(v));
        }

        bool grid_vanishes = true;
        std::vector<long> coeff(k, -2);
        for (;;) {
            SparseVector x;
            for (std::size_t b = 0; b < k; ++b)
                x = sparse_add(x, sparse_scale(basis[b], q(coeff[b])));
            if (!f(x).is_zero())
                grid_vanishes = false;
            std::size_t pos = 0;
            while (pos < k && coeff[pos] == 2)
                coeff[pos++] = -2;
            if (pos == k)
                break;
            ++coeff[pos];
        }

        SpanVanishing r = quadratic_vanishes_on_span(f, basis);
        CHECK(r.vanishes == grid_vanishes);
        if (!r.vanishes) {
            REQUIRE(r.witness);
            CHECK_FALSE(f(*r.witness).is_zero());
            // The witness is a basis vector or a sum of two.
            bool in_span = false;
            for (std::size_t a = 0; a < k; ++a) {
                in_span = in_span || *r.witness == basis[a];
                for (std::size_t b = a + 1; b < k; ++b)
                    in_span = in_span || *r.witness == sparse_add(basis[a], basis[b]);
            }
            CHECK(in_span);
        }
    }
}
