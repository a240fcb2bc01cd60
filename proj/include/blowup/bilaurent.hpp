#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include "blowup/gaussian_rational.hpp"

namespace blowup {

/// Exponent pair of the monomial z^zexp u^uexp.
struct Monomial {
    int uexp = 0;
    int zexp = 0;

    auto operator<=>(const Monomial&) const = default;
};

/// Returned by u_order() for the zero series.
inline constexpr int kInfiniteOrder = std::numeric_limits<int>::max();

/// Finitely supported series, polynomial in u (uexp >= 0) and Laurent in z.
/// Zero coefficients are never stored.
class BiLaurent {
public:
    using Terms = std::map<Monomial, GaussianRational>;

    BiLaurent() = default;
    BiLaurent(const GaussianRational& constant);  // NOLINT: scalars embed as constants

    /// c * z^zexp * u^uexp. Throws std::invalid_argument when uexp < 0.
    static BiLaurent monomial(int uexp, int zexp, const GaussianRational& c = 1);
    static BiLaurent z(int zexp = 1) { return monomial(0, zexp); }
    static BiLaurent u(int uexp = 1) { return monomial(uexp, 0); }

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    GaussianRational coeff(int uexp, int zexp) const;
    /// Adds c to the coefficient of z^zexp u^uexp, dropping it if it cancels.
    void add_term(int uexp, int zexp, const GaussianRational& c);

    /// Multiplies by z^dz u^du. Throws std::invalid_argument if any u exponent
    /// would become negative.
    BiLaurent shifted(int du, int dz) const;
    /// Division by u^k when exact, otherwise nullopt.
    std::optional<BiLaurent> divided_by_u_power(int k) const;

    BiLaurent& operator+=(const BiLaurent& o);
    BiLaurent& operator-=(const BiLaurent& o);
    BiLaurent& operator*=(const GaussianRational& s);
    BiLaurent operator-() const;

    friend BiLaurent operator+(BiLaurent a, const BiLaurent& b) { return a += b; }
    friend BiLaurent operator-(BiLaurent a, const BiLaurent& b) { return a -= b; }
    friend BiLaurent operator*(BiLaurent a, const GaussianRational& s) { return a *= s; }
    friend BiLaurent operator*(const GaussianRational& s, BiLaurent a) { return a *= s; }
    friend BiLaurent operator*(const BiLaurent& f, const BiLaurent& g) { return mul(f, g); }
    friend bool operator==(const BiLaurent& a, const BiLaurent& b) { return a.terms_ == b.terms_; }

    friend BiLaurent mul(const BiLaurent& f, const BiLaurent& g);

    /// Largest uexp in the support; -1 for zero.
    int max_uexp() const;
    int min_zexp() const;
    int max_zexp() const;

    std::string to_string() const;

private:
    Terms terms_;
};

BiLaurent mul(const BiLaurent& f, const BiLaurent& g);

/// z^m u^i extends over the chart (z^-1, zu) iff m <= i.
bool is_v_holomorphic(const BiLaurent& f);

/// Smallest uexp in the support, kInfiniteOrder for zero.
int u_order(const BiLaurent& f);

/// Keeps the terms with uexp <= max_u. Requires max_u >= 0.
BiLaurent truncate_u(const BiLaurent& f, int max_u);

/// The u^0 coefficient as a Laurent polynomial in z.
BiLaurent u_constant_part(const BiLaurent& f);

std::ostream& operator<<(std::ostream& os, const BiLaurent& f);

}  // namespace blowup
