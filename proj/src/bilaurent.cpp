#include "blowup/bilaurent.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace blowup {

BiLaurent::BiLaurent(const GaussianRational& constant) {
    if (!constant.is_zero())
        terms_.emplace(Monomial{0, 0}, constant);
}

BiLaurent BiLaurent::monomial(int uexp, int zexp, const GaussianRational& c) {
    if (uexp < 0)
        throw std::invalid_argument("negative u exponent");
    BiLaurent f;
    if (!c.is_zero())
        f.terms_.emplace(Monomial{uexp, zexp}, c);
    return f;
}

GaussianRational BiLaurent::coeff(int uexp, int zexp) const {
    auto it = terms_.find(Monomial{uexp, zexp});
    return it == terms_.end() ? GaussianRational{} : it->second;
}

void BiLaurent::add_term(int uexp, int zexp, const GaussianRational& c) {
    if (c.is_zero())
        return;
    if (uexp < 0)
        throw std::invalid_argument("negative u exponent");
    auto [it, inserted] = terms_.try_emplace(Monomial{uexp, zexp}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

BiLaurent BiLaurent::shifted(int du, int dz) const {
    BiLaurent out;
    for (const auto& [m, c] : terms_) {
        if (m.uexp + du < 0)
            throw std::invalid_argument("shift makes u exponent negative");
        out.terms_.emplace_hint(out.terms_.end(), Monomial{m.uexp + du, m.zexp + dz}, c);
    }
    return out;
}

std::optional<BiLaurent> BiLaurent::divided_by_u_power(int k) const {
    if (u_order(*this) < k && !is_zero())
        return std::nullopt;
    return shifted(-k, 0);
}

BiLaurent& BiLaurent::operator+=(const BiLaurent& o) {
    for (const auto& [m, c] : o.terms_)
        add_term(m.uexp, m.zexp, c);
    return *this;
}

BiLaurent& BiLaurent::operator-=(const BiLaurent& o) {
    for (const auto& [m, c] : o.terms_)
        add_term(m.uexp, m.zexp, -c);
    return *this;
}

BiLaurent& BiLaurent::operator*=(const GaussianRational& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_)
        c *= s;
    return *this;
}

BiLaurent BiLaurent::operator-() const {
    BiLaurent out = *this;
    for (auto& [m, c] : out.terms_)
        c = -c;
    return out;
}

BiLaurent mul(const BiLaurent& f, const BiLaurent& g) {
    BiLaurent out;
    for (const auto& [mf, cf] : f.terms_)
        for (const auto& [mg, cg] : g.terms_)
            out.add_term(mf.uexp + mg.uexp, mf.zexp + mg.zexp, cf * cg);
    return out;
}

int BiLaurent::max_uexp() const { return terms_.empty() ? -1 : terms_.rbegin()->first.uexp; }

int BiLaurent::min_zexp() const {
    int best = std::numeric_limits<int>::max();
    for (const auto& kv : terms_)
        best = std::min(best, kv.first.zexp);
    return best;
}

int BiLaurent::max_zexp() const {
    int best = std::numeric_limits<int>::min();
    for (const auto& kv : terms_)
        best = std::max(best, kv.first.zexp);
    return best;
}

std::string BiLaurent::to_string() const {
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first)
            os << " + ";
        first = false;
        os << c;
        if (m.zexp != 0)
            os << "*z^" << m.zexp;
        if (m.uexp != 0)
            os << "*u^" << m.uexp;
    }
    return os.str();
}

bool is_v_holomorphic(const BiLaurent& f) {
    return std::all_of(f.terms().begin(), f.terms().end(),
                       [](const auto& kv) { return kv.first.zexp <= kv.first.uexp; });
}

int u_order(const BiLaurent& f) { return f.is_zero() ? kInfiniteOrder : f.terms().begin()->first.uexp; }

BiLaurent truncate_u(const BiLaurent& f, int max_u) {
    if (max_u < 0)
        throw std::invalid_argument("truncate_u: negative level");
    BiLaurent out;
    for (const auto& [m, c] : f.terms()) {
        if (m.uexp > max_u)
            break;
        out.add_term(m.uexp, m.zexp, c);
    }
    return out;
}

BiLaurent u_constant_part(const BiLaurent& f) { return truncate_u(f, 0); }

std::ostream& operator<<(std::ostream& os, const BiLaurent& f) { return os << f.to_string(); }

}  // namespace blowup
