#include "blowup/orbit.hpp"

#include <map>
#include <stdexcept>

#include "rng.hpp"

namespace blowup {

namespace {

bool is_v_polynomial(const BiLaurent& f) {
    for (const auto& kv : f.terms())
        if (kv.first.uexp != kv.first.zexp)
            return false;
    return !f.coeff(0, 0).is_zero();
}

}  // namespace

std::optional<OrbitSample> orbit_sample_with_gauge(const CanonicalForm& p, const BiLaurent& a, const BiLaurent& d,
                                                   const TruncationParams& params, std::uint64_t seed) {
    if (!is_v_polynomial(a) || !is_v_polynomial(d))
        throw std::invalid_argument("orbit gauge: a and d must be polynomials in zu with nonzero constant term");
    const int j = p.level();
    const TruncationParams box = params.normalized(j);
    const std::vector<WindowIndex> win = window(j);
    const GaugeLayout b_layout(box.U, box.Z);
    const std::size_t n_window = win.size();
    const std::size_t n_b = static_cast<std::size_t>(box.U + 1) * (box.Z + 1);

    // beta = z^2j b + z^j (p' d - a p); unknowns are p' over the window, then b.
    std::map<Monomial, SparseVector> rows;
    std::map<Monomial, GaussianRational> constant;
    auto add = [&](int i, int m, std::size_t col, const GaussianRational& c) {
        if (m > i)
            rows[Monomial{i, m}].push_back({col, c});
    };
    for (std::size_t k = 0; k < n_window; ++k)
        for (const auto& [m, c] : d.terms())
            add(win[k].i + m.uexp, win[k].l + j + m.zexp, k, c);
    for (std::size_t k = 0; k < n_b; ++k) {
        const GaugeColumn label = b_layout.label(k);
        add(label.uexp, label.zexp + 2 * j, n_window + k, GaussianRational(1));
    }
    const BiLaurent forced = (a * p.poly()).shifted(0, j);
    for (const auto& [m, c] : forced.terms())
        if (m.zexp > m.uexp) {
            rows[m];
            constant[m] -= c;
        }

    ExactMatrix system(0, n_window + n_b);
    Vector rhs;
    for (auto& [m, row] : rows) {
        system.append_row(std::move(row));
        auto it = constant.find(m);
        rhs.push_back(it == constant.end() ? GaussianRational{} : -it->second);
    }
    std::optional<Vector> x = solve(system, rhs);
    if (!x)
        return std::nullopt;

    BiLaurent pprime, b;
    for (std::size_t k = 0; k < n_window; ++k)
        pprime.add_term(win[k].i, win[k].l, (*x)[k]);
    for (std::size_t k = 0; k < n_b; ++k) {
        const GaugeColumn label = b_layout.label(k);
        b.add_term(label.uexp, label.zexp, (*x)[n_window + k]);
    }
    CanonicalForm target(j, std::move(pprime));
    Certificate cert{p, target, GaugeCandidate{a, std::move(b), BiLaurent{}, d}, box.U, box.Z, seed};
    if (!verify_certificate(cert))
        throw std::logic_error("orbit sample produced an unverifiable certificate");
    return OrbitSample{std::move(target), std::move(cert)};
}

OrbitSample orbit_sample(const CanonicalForm& p, std::uint64_t seed, const TruncationParams& params) {
    constexpr int kRetries = 8;
    constexpr long kBound = 3;
    const BiLaurent v = BiLaurent::monomial(1, 1);
    for (int attempt = 0; attempt < kRetries; ++attempt) {
        detail::Rng rng(detail::mix_seed({seed, static_cast<std::uint64_t>(attempt),
                                          static_cast<std::uint64_t>(p.level())}));
        const bool linear = attempt < kRetries / 2;
        BiLaurent d = BiLaurent(rng.nonzero_gaussian(kBound));
        BiLaurent e = BiLaurent(rng.nonzero_gaussian(kBound));
        if (linear) {
            d += v * rng.gaussian(kBound);
            e += v * rng.gaussian(kBound);
        }
        if (auto s = orbit_sample_with_gauge(p, d * e, d, params, seed))
            return std::move(*s);
    }
    throw std::runtime_error("orbit_sample: no sample found");
}

OrbitSample orbit_sample(const CanonicalForm& p, std::uint64_t seed) {
    return orbit_sample(p, seed, TruncationParams::defaults(p.level()));
}

}  // namespace blowup
