#include <doctest.h>

#include <set>

#include "blowup/canonical_form.hpp"
#include "helpers.hpp"

using namespace blowup;
using testing_support::Gen;
using testing_support::mono;
using testing_support::q;

TEST_CASE("window examples") {
    CHECK(window(1).empty());
    CHECK(window(2) == std::vector<WindowIndex>{{1, 0}, {1, 1}, {2, 1}});
    CHECK(window(4).size() == 21);
    CHECK_THROWS_AS(window(0), std::invalid_argument);
    CHECK_THROWS_AS(window(-3), std::invalid_argument);
}

TEST_CASE("window size matches the closed formula") {
    for (int j = 1; j <= 8; ++j) {
        // Enumerate the index lattice independently of window().
        long count = 0;
        for (int i = -2; i <= 3 * j; ++i)
            for (int l = -3 * j; l <= 3 * j; ++l)
                if (1 <= i && i <= 2 * j - 2 && i - j + 1 <= l && l <= j - 1)
                    ++count;
        CHECK(count == window_size(j));
        CHECK(static_cast<long>(window(j).size()) == (j - 1) * (2L * j - 1));
    }
}

TEST_CASE("canonical forms reject terms outside the window") {
    CHECK_NOTHROW(CanonicalForm(2, mono(1, 0) + mono(2, 1)));
    CHECK_THROWS_AS(CanonicalForm(2, mono(2, 0)), std::invalid_argument);
    CHECK_THROWS_AS(CanonicalForm(2, mono(0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(CanonicalForm(1, mono(1, 0)), std::invalid_argument);
    CHECK_THROWS_AS(CanonicalForm(0, BiLaurent{}), std::invalid_argument);
    CHECK(CanonicalForm::zero(1).poly().is_zero());
}

TEST_CASE("transition matrix") {
    LaurentMatrix2 t1 = transition_matrix(CanonicalForm::zero(1));
    CHECK(t1.m00 == BiLaurent::z(1));
    CHECK(t1.m01.is_zero());
    CHECK(t1.m10.is_zero());
    CHECK(t1.m11 == BiLaurent::z(-1));

    LaurentMatrix2 t2 = transition_matrix(CanonicalForm(2, mono(1, 0)));
    CHECK(t2.m00 == BiLaurent::z(2));
    CHECK(t2.m01 == BiLaurent::u());
    CHECK(t2.m11 == BiLaurent::z(-2));

    Gen g(41);
    for (int j = 1; j <= 5; ++j)
        for (int k = 0; k < 5; ++k)
            CHECK(transition_matrix(g.form(j)).determinant() == BiLaurent(GaussianRational(1)));
}

TEST_CASE("phi examples") {
    CHECK(phi(CanonicalForm::zero(1)) == CanonicalForm::zero(2));
    CHECK(phi(CanonicalForm(2, mono(1, 0))) == CanonicalForm(3, mono(3, 1)));

    // Oracle: push every window index through (i, l) -> (i + 2, l + 1).
    BiLaurent p = mono(1, 0, 2) + mono(1, 1, 3) + mono(2, 1, 5);
    BiLaurent expected;
    for (const auto& [m, c] : p.terms()) {
        REQUIRE(in_window(3, m.uexp + 2, m.zexp + 1));
        expected.add_term(m.uexp + 2, m.zexp + 1, c);
    }
    CHECK(expected == mono(3, 1, 2) + mono(3, 2, 3) + mono(4, 2, 5));
    CHECK(phi(CanonicalForm(2, p)).poly() == expected);
    CHECK(phi(CanonicalForm(2, p)).level() == 3);
}

TEST_CASE("phi is a bijection of windows onto the rows i >= 3") {
    for (int j = 1; j <= 7; ++j) {
        std::set<WindowIndex> image;
        for (const auto& w : window(j))
            image.insert({w.i + 2, w.l + 1});
        std::set<WindowIndex> target;
        for (const auto& w : window(j + 1))
            if (w.i >= 3)
                target.insert(w);
        CHECK(image == target);
        CHECK(image.size() == window(j).size());
    }
}

TEST_CASE("phi_inverse and in_image") {
    auto back = phi_inverse(CanonicalForm(3, mono(3, 1)));
    REQUIRE(back);
    CHECK(*back == CanonicalForm(2, mono(1, 0)));
    CHECK_FALSE(phi_inverse(CanonicalForm(3, mono(1, 0))));
    CHECK_FALSE(in_image(CanonicalForm(3, mono(1, 0))));
    CHECK_FALSE(in_image(CanonicalForm(3, mono(2, 1) + mono(3, 1))));

    // Every level-2 index has i <= 2, so only the zero form is in the image.
    for (const auto& w : window(2)) {
        CHECK(w.i <= 2);
        CHECK_FALSE(in_image(CanonicalForm(2, mono(w.i, w.l))));
    }
    CHECK(in_image(CanonicalForm::zero(2)));
    CHECK_FALSE(in_image(CanonicalForm::zero(1)));
}

TEST_CASE("phi round trips and image membership on random forms") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        int j = 1 + static_cast<int>(seed % 4);
        CanonicalForm cf = random_form(j, seed);
        CanonicalForm img = phi(cf);
        CHECK(in_image(img));
        auto back = phi_inverse(img);
        REQUIRE(back);
        CHECK(*back == cf);
        CHECK(phi(*back) == img);
    }
    Gen g(43);
    for (int k = 0; k < 50; ++k) {
        CanonicalForm cf = g.form(3);
        CHECK(in_image(cf) == phi_inverse(cf).has_value());
    }
}

TEST_CASE("phi is coefficient-wise linear") {
    Gen g(47);
    for (int k = 0; k < 30; ++k) {
        CanonicalForm p = g.form(3), r = g.form(3);
        GaussianRational lambda = g.scalar(), mu = g.scalar();
        CanonicalForm combo(3, lambda * p.poly() + mu * r.poly());
        CHECK(phi(combo).poly() == lambda * phi(p).poly() + mu * phi(r).poly());
    }
}

TEST_CASE("random_form determinism and support") {
    CHECK(random_form(1, 99).poly().is_zero());
    CHECK(random_form(3, 5, 7) == random_form(3, 5, 7));
    CHECK_FALSE(random_form(3, 5, 7) == random_form(3, 6, 7));
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        CanonicalForm cf = random_form(3, seed, 4);
        for (const auto& [m, c] : cf.poly().terms()) {
            CHECK(in_window(3, m.uexp, m.zexp));
            CHECK(abs(c.re().get_num()) <= 4);
            CHECK(c.re().get_den() <= 4);
            CHECK(abs(c.im().get_num()) <= 4);
            CHECK(c.im().get_den() <= 4);
        }
    }
    CHECK_THROWS_AS(random_form(2, 1, 0), std::invalid_argument);
}
