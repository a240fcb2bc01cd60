#pragma once

#include <cstdint>
#include <optional>

#include "blowup/iso_engine.hpp"

namespace blowup {

struct OrbitSample {
    CanonicalForm pprime;
    Certificate certificate;
};

/// Solves for p' on the window and b in the params box so that the gauge
/// [[a, b], [0, d]] carries p to p'. a and d must be polynomials in v = zu
/// with nonzero constant terms (std::invalid_argument otherwise). nullopt
/// when the linear system has no solution in the box.
std::optional<OrbitSample> orbit_sample_with_gauge(const CanonicalForm& p, const BiLaurent& a, const BiLaurent& d,
                                                   const TruncationParams& params, std::uint64_t seed = 0);

/// Draws d = d0 + d1 v and a = d (e0 + e1 v) from the seed and solves as
/// above; a is a multiple of d so b stays finite. Retries with constant
/// gauges before giving up with std::runtime_error.
OrbitSample orbit_sample(const CanonicalForm& p, std::uint64_t seed, const TruncationParams& params);
OrbitSample orbit_sample(const CanonicalForm& p, std::uint64_t seed);

}  // namespace blowup
