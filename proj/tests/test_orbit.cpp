#include <doctest.h>

#include "blowup/orbit.hpp"
#include "helpers.hpp"

using namespace blowup;
using testing_support::Gen;
using testing_support::mono;
using testing_support::q;

namespace {

BiLaurent constant(const GaussianRational& c) { return BiLaurent(c); }

}  // namespace

TEST_CASE("constant gauges give the expected orbit points") {
    Gen g(73);
    for (int k = 0; k < 20; ++k) {
        const int j = 1 + k % 4;
        CanonicalForm p = g.form(j);
        TruncationParams params = TruncationParams::defaults(j);

        auto same = orbit_sample_with_gauge(p, constant(1), constant(1), params);
        REQUIRE(same);
        CHECK(same->pprime == p);

        GaussianRational lambda = g.scalar();
        if (lambda.is_zero())
            continue;
        auto scaled = orbit_sample_with_gauge(p, constant(lambda), constant(1), params);
        REQUIRE(scaled);
        CHECK(scaled->pprime == CanonicalForm(j, lambda * p.poly()));
        CHECK(verify_certificate(scaled->certificate));
    }
}

TEST_CASE("gauges must be polynomials in zu with a unit constant term") {
    CanonicalForm p(2, mono(1, 0));
    TruncationParams params = TruncationParams::defaults(2);
    CHECK_THROWS_AS(orbit_sample_with_gauge(p, mono(1, 0), constant(1), params), std::invalid_argument);
    CHECK_THROWS_AS(orbit_sample_with_gauge(p, constant(1), mono(1, 1), params), std::invalid_argument);
    CHECK_THROWS_AS(orbit_sample_with_gauge(p, constant(0), constant(1), params), std::invalid_argument);
    CHECK_NOTHROW(orbit_sample_with_gauge(p, constant(2) + mono(1, 1), constant(1), params));
}

TEST_CASE("orbit samples carry verified certificates and decide iso") {
    for (int j : {2, 3}) {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            CanonicalForm p = random_form(j, seed);
            OrbitSample s = orbit_sample(p, seed);
            CHECK(s.certificate.p == p);
            CHECK(s.certificate.pprime == s.pprime);
            CHECK(s.certificate.gauge.c.is_zero());
            CHECK(verify_certificate(s.certificate));
            CHECK(decide_iso(p, s.pprime).is_iso());
        }
    }
}

TEST_CASE("orbit sampling is deterministic and moves points") {
    CanonicalForm p = random_form(3, 11);
    CHECK(orbit_sample(p, 5).pprime == orbit_sample(p, 5).pprime);
    std::size_t moved = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        if (!(orbit_sample(p, seed).pprime == p))
            ++moved;
    CHECK(moved > 10);
}
