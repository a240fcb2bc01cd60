#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "blowup/bilaurent.hpp"

namespace blowup {

/// Index (i, l) of the coefficient of z^l u^i in a canonical polynomial.
struct WindowIndex {
    int i = 0;  // u exponent
    int l = 0;  // z exponent

    auto operator<=>(const WindowIndex&) const = default;
};

/// W_j = {(i, l) : 1 <= i <= 2j-2, i-j+1 <= l <= j-1}, ordered by (i, l).
/// Throws std::invalid_argument for j <= 0.
std::vector<WindowIndex> window(int j);

/// (j-1)(2j-1), the number of free coefficients at level j.
long window_size(int j);

bool in_window(int j, int i, int l);

/// A splitting level j >= 1 together with a polynomial supported on W_j.
class CanonicalForm {
public:
    /// Throws std::invalid_argument if j <= 0 or supp(p) is not inside W_j.
    CanonicalForm(int j, BiLaurent p);
    static CanonicalForm zero(int j) { return CanonicalForm(j, BiLaurent{}); }

    int level() const noexcept { return j_; }
    const BiLaurent& poly() const noexcept { return p_; }
    GaussianRational coeff(WindowIndex w) const { return p_.coeff(w.i, w.l); }

    friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;

private:
    int j_;
    BiLaurent p_;
};

/// 2x2 matrix of Laurent series, row-major.
struct LaurentMatrix2 {
    BiLaurent m00, m01, m10, m11;

    BiLaurent determinant() const { return m00 * m11 - m01 * m10; }
    friend bool operator==(const LaurentMatrix2&, const LaurentMatrix2&) = default;
};

/// [[z^j, p], [0, z^-j]].
LaurentMatrix2 transition_matrix(const CanonicalForm& cf);

/// p -> z u^2 p, a level-(j+1) form.
CanonicalForm phi(const CanonicalForm& cf);

/// Preimage under phi when every term has u exponent >= 3.
std::optional<CanonicalForm> phi_inverse(const CanonicalForm& cf);

/// True iff the coefficients with i in {1, 2} all vanish (the closed set-image
/// of phi). Level 1 has no preimage level and is never in the image.
bool in_image(const CanonicalForm& cf);

/// Deterministic in (j, seed, bound). Each window coefficient has real and
/// imaginary parts n/d with |n| <= bound and 1 <= d <= bound.
CanonicalForm random_form(int j, std::uint64_t seed, int bound = 4);

}  // namespace blowup
