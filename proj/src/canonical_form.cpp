#include "blowup/canonical_form.hpp"

#include <stdexcept>
#include <string>

#include "rng.hpp"

namespace blowup {

std::vector<WindowIndex> window(int j) {
    if (j <= 0)
        throw std::invalid_argument("window: level must be >= 1, got " + std::to_string(j));
    std::vector<WindowIndex> out;
    for (int i = 1; i <= 2 * j - 2; ++i)
        for (int l = i - j + 1; l <= j - 1; ++l)
            out.push_back({i, l});
    return out;
}

long window_size(int j) {
    if (j <= 0)
        throw std::invalid_argument("window_size: level must be >= 1");
    return static_cast<long>(j - 1) * (2L * j - 1);
}

bool in_window(int j, int i, int l) { return 1 <= i && i <= 2 * j - 2 && i - j + 1 <= l && l <= j - 1; }

CanonicalForm::CanonicalForm(int j, BiLaurent p) : j_(j), p_(std::move(p)) {
    if (j <= 0)
        throw std::invalid_argument("CanonicalForm: level must be >= 1");
    for (const auto& [m, c] : p_.terms())
        if (!in_window(j, m.uexp, m.zexp))
            throw std::invalid_argument("CanonicalForm: term z^" + std::to_string(m.zexp) + " u^" +
                                        std::to_string(m.uexp) + " outside window at level " +
                                        std::to_string(j));
}

LaurentMatrix2 transition_matrix(const CanonicalForm& cf) {
    const int j = cf.level();
    return {BiLaurent::z(j), cf.poly(), BiLaurent{}, BiLaurent::z(-j)};
}

CanonicalForm phi(const CanonicalForm& cf) { return {cf.level() + 1, cf.poly().shifted(2, 1)}; }

std::optional<CanonicalForm> phi_inverse(const CanonicalForm& cf) {
    if (!in_image(cf))
        return std::nullopt;
    return CanonicalForm(cf.level() - 1, cf.poly().shifted(-2, -1));
}

bool in_image(const CanonicalForm& cf) { return cf.level() >= 2 && u_order(cf.poly()) >= 3; }

CanonicalForm random_form(int j, std::uint64_t seed, int bound) {
    if (bound < 1)
        throw std::invalid_argument("random_form: bound must be >= 1");
    detail::Rng rng(detail::mix_seed({static_cast<std::uint64_t>(j), seed, static_cast<std::uint64_t>(bound)}));
    BiLaurent p;
    for (const auto& w : window(j))
        p.add_term(w.i, w.l, rng.gaussian(bound));
    return {j, std::move(p)};
}

}  // namespace blowup
