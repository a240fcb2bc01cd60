#include "blowup/gaussian_rational.hpp"

#include <ostream>
#include <stdexcept>

namespace blowup {

namespace {

mpq_class parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty())
        throw std::invalid_argument("empty rational string");
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("malformed rational: " + s);
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

std::size_t int_bits(const mpz_class& z) {
    return sgn(z) == 0 ? 0 : mpz_sizeinbase(z.get_mpz_t(), 2);
}

}  // namespace

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

GaussianRational::GaussianRational(long re_num, long re_den, long im_num, long im_den) {
    if (re_den == 0 || im_den == 0)
        throw std::invalid_argument("zero denominator");
    re_ = mpq_class(mpz_class(re_num), mpz_class(re_den));
    im_ = mpq_class(mpz_class(im_num), mpz_class(im_den));
    re_.canonicalize();
    im_.canonicalize();
}

GaussianRational GaussianRational::parse(std::string_view re, std::string_view im) {
    return {parse_rational(re), parse_rational(im)};
}

GaussianRational GaussianRational::inverse() const {
    if (is_zero())
        throw std::domain_error("inverse of zero");
    if (sgn(im_) == 0)
        return {1 / re_, 0};
    mpq_class n = norm();
    return {re_ / n, -im_ / n};
}

std::size_t GaussianRational::bit_size() const {
    return int_bits(re_.get_num()) + int_bits(re_.get_den()) + int_bits(im_.get_num()) +
           int_bits(im_.get_den());
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    if (sgn(o.im_) != 0)
        im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    if (sgn(o.im_) != 0)
        im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    if (o.is_zero())
        throw std::domain_error("division by zero");
    if (sgn(o.im_) == 0) {
        re_ /= o.re_;
        if (sgn(im_) != 0)
            im_ /= o.re_;
        return *this;
    }
    return *this *= o.inverse();
}

void GaussianRational::sub_mul(const GaussianRational& f, const GaussianRational& g) {
    if (sgn(f.im_) == 0 && sgn(g.im_) == 0) {
        re_ -= f.re_ * g.re_;
        return;
    }
    *this -= f * g;
}

std::string GaussianRational::rational_string(const mpq_class& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string GaussianRational::to_string() const {
    if (sgn(im_) == 0)
        return re_.get_str();
    if (sgn(re_) == 0)
        return im_.get_str() + "i";
    return "(" + re_.get_str() + (sgn(im_) > 0 ? "+" : "") + im_.get_str() + "i)";
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& x) { return os << x.to_string(); }

}  // namespace blowup
