#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace blowup {

/// Exact element of Q(i). Both parts are kept canonical (lowest terms,
/// positive denominator); GMP canonicalizes after every arithmetic op.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long re) : re_(re) {}  // NOLINT: implicit from integers
    GaussianRational(mpq_class re, mpq_class im = 0);
    GaussianRational(long re_num, long re_den, long im_num, long im_den);

    static GaussianRational i_unit() { return {mpq_class(0), mpq_class(1)}; }

    /// Parses "re" or "re_num/re_den" for each part.
    static GaussianRational parse(std::string_view re, std::string_view im);

    const mpq_class& re() const noexcept { return re_; }
    const mpq_class& im() const noexcept { return im_; }

    bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const noexcept { return re_ == 1 && sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    /// |x|^2, a nonnegative rational.
    mpq_class norm() const { return re_ * re_ + im_ * im_; }
    /// Throws std::domain_error on zero.
    GaussianRational inverse() const;

    /// Total bit length of the four integers; pivot-size heuristic.
    std::size_t bit_size() const;

    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    /// this -= f * g without temporaries for the real-only fast path.
    void sub_mul(const GaussianRational& f, const GaussianRational& g);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    GaussianRational operator-() const { return {-re_, -im_}; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// "num/den" with den always present, e.g. "-3/1".
    static std::string rational_string(const mpq_class& q);

    std::string to_string() const;

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& x);

}  // namespace blowup
