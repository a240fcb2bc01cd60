#include "blowup/iso_engine.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <tuple>

namespace blowup {

namespace {

bool nonnegative_exponents(const BiLaurent& f) {
    return std::all_of(f.terms().begin(), f.terms().end(),
                       [](const auto& kv) { return kv.first.uexp >= 0 && kv.first.zexp >= 0; });
}

void require_same_level(const CanonicalForm& p, const CanonicalForm& pprime) {
    if (p.level() != pprime.level())
        throw std::invalid_argument("level mismatch: " + std::to_string(p.level()) + " vs " +
                                    std::to_string(pprime.level()));
}

struct Contribution {
    ConjugateEntry target;
    BiLaurent multiplier;
};

// How one unknown of each gauge entry feeds the four conjugate entries.
std::array<std::vector<Contribution>, 4> contributions(const BiLaurent& p, const BiLaurent& pprime, int j) {
    const BiLaurent one(GaussianRational(1));
    std::array<std::vector<Contribution>, 4> out;
    out[0] = {{ConjugateEntry::alpha, one}, {ConjugateEntry::beta, -p.shifted(0, j)}};
    out[1] = {{ConjugateEntry::beta, BiLaurent::z(2 * j)}};
    out[2] = {{ConjugateEntry::alpha, pprime.shifted(0, -j)},
              {ConjugateEntry::beta, -(p * pprime)},
              {ConjugateEntry::gamma, BiLaurent::z(-2 * j)},
              {ConjugateEntry::delta, -p.shifted(0, -j)}};
    out[3] = {{ConjugateEntry::beta, pprime.shifted(0, j)}, {ConjugateEntry::delta, one}};
    return out;
}

template <class Keep>
GaugeSystem assemble(const BiLaurent& p, const BiLaurent& pprime, int j, const GaugeLayout& layout, Keep keep) {
    using Key = std::tuple<int, int, int>;
    std::map<Key, SparseVector> rows;
    const auto contrib = contributions(p, pprime, j);
    for (std::size_t col = 0; col < layout.size(); ++col) {
        const GaugeColumn label = layout.label(col);
        for (const auto& [target, mult] : contrib[static_cast<int>(label.entry)]) {
            for (const auto& [m, c] : mult.terms()) {
                const int i = label.uexp + m.uexp;
                const int z = label.zexp + m.zexp;
                if (z > i && keep(i, z))
                    rows[Key{static_cast<int>(target), i, z}].push_back({col, c});
            }
        }
    }
    GaugeSystem sys{layout, ExactMatrix(0, layout.size()), {}};
    sys.rows.reserve(rows.size());
    for (auto& [key, row] : rows) {
        sys.rows.push_back({static_cast<ConjugateEntry>(std::get<0>(key)), std::get<1>(key), std::get<2>(key)});
        sys.matrix.append_row(std::move(row));
    }
    return sys;
}

Certificate make_certificate(const CanonicalForm& p, const CanonicalForm& pprime, GaugeCandidate g,
                             const TruncationParams& params, std::uint64_t seed) {
    Certificate cert{p, pprime, std::move(g), params.U, params.Z, seed};
    if (!verify_certificate(cert))
        throw std::logic_error("engine produced a certificate that fails verification");
    return cert;
}

enum class WindowOutcome { Refuted, Witnessed, Open };

struct WindowResult {
    WindowOutcome outcome = WindowOutcome::Open;
    std::optional<GaugeCandidate> gauge;
};

// One necessity/sufficiency round over an already built pair of systems.
WindowResult decide_window(const GaugeSystem& necessity, const GaugeSystem& sufficiency) {
    const QuadraticForm q = necessity.layout.determinant_form();
    if (quadratic_vanishes_on_span(q, nullspace(necessity.matrix)).vanishes)
        return {WindowOutcome::Refuted, std::nullopt};
    SpanVanishing s = quadratic_vanishes_on_span(q, nullspace(sufficiency.matrix));
    if (!s.vanishes)
        return {WindowOutcome::Witnessed, sufficiency.layout.gauge(*s.witness)};
    return {};
}

}  // namespace

GaugeCandidate GaugeCandidate::make(BiLaurent a, BiLaurent b, BiLaurent c, BiLaurent d) {
    GaugeCandidate g{std::move(a), std::move(b), std::move(c), std::move(d)};
    if (!g.is_admissible())
        throw std::invalid_argument("gauge entries must be holomorphic in (z, u)");
    return g;
}

GaugeCandidate GaugeCandidate::identity() { return diagonal(1, 1); }

GaugeCandidate GaugeCandidate::diagonal(const GaussianRational& t, const GaussianRational& s) {
    return {BiLaurent(t), BiLaurent{}, BiLaurent{}, BiLaurent(s)};
}

bool GaugeCandidate::is_admissible() const {
    return nonnegative_exponents(a) && nonnegative_exponents(b) && nonnegative_exponents(c) &&
           nonnegative_exponents(d);
}

GaussianRational GaugeCandidate::det_at_origin() const {
    return a.coeff(0, 0) * d.coeff(0, 0) - b.coeff(0, 0) * c.coeff(0, 0);
}

bool ConjugateMatrix::is_v_holomorphic() const {
    return blowup::is_v_holomorphic(alpha) && blowup::is_v_holomorphic(beta) &&
           blowup::is_v_holomorphic(gamma) && blowup::is_v_holomorphic(delta);
}

ConjugateMatrix conjugate(const CanonicalForm& p, const CanonicalForm& pprime, const GaugeCandidate& g) {
    require_same_level(p, pprime);
    const int j = p.level();
    const BiLaurent& P = p.poly();
    const BiLaurent& Q = pprime.poly();
    ConjugateMatrix out;
    out.alpha = g.a + (Q * g.c).shifted(0, -j);
    out.beta = g.b.shifted(0, 2 * j) + (Q * g.d - g.a * P).shifted(0, j) - P * Q * g.c;
    out.gamma = g.c.shifted(0, -2 * j);
    out.delta = g.d - (P * g.c).shifted(0, -j);
    return out;
}

TruncationParams TruncationParams::defaults(int j) { return {2 * j, 4 * j, 2}; }

TruncationParams TruncationParams::normalized(int j) const {
    return {std::max(U, 2 * j - 2), std::max(Z, 2 * j + 1), std::max(deepening_cap, 0)};
}

GaugeLayout::GaugeLayout(int max_u, int max_z) : max_u_(max_u), max_z_(max_z) {
    if (max_u < 0 || max_z < 0)
        throw std::invalid_argument("GaugeLayout: negative bound");
}

std::size_t GaugeLayout::index(GaugeEntry e, int uexp, int zexp) const {
    if (uexp < 0 || uexp > max_u_ || zexp < 0 || zexp > max_z_)
        throw std::out_of_range("GaugeLayout::index");
    return static_cast<std::size_t>(e) * per_entry() + static_cast<std::size_t>(uexp) * (max_z_ + 1) +
           static_cast<std::size_t>(zexp);
}

GaugeColumn GaugeLayout::label(std::size_t col) const {
    if (col >= size())
        throw std::out_of_range("GaugeLayout::label");
    const std::size_t rem = col % per_entry();
    return {static_cast<GaugeEntry>(col / per_entry()), static_cast<int>(rem / (max_z_ + 1)),
            static_cast<int>(rem % (max_z_ + 1))};
}

GaugeCandidate GaugeLayout::gauge(const SparseVector& x) const {
    GaugeCandidate g;
    std::array<BiLaurent*, 4> slots{&g.a, &g.b, &g.c, &g.d};
    for (const auto& e : x) {
        const GaugeColumn c = label(e.col);
        slots[static_cast<int>(c.entry)]->add_term(c.uexp, c.zexp, e.value);
    }
    return g;
}

SparseVector GaugeLayout::vector(const GaugeCandidate& g) const {
    SparseVector out;
    const std::array<const BiLaurent*, 4> slots{&g.a, &g.b, &g.c, &g.d};
    for (int e = 0; e < 4; ++e)
        for (const auto& [m, c] : slots[e]->terms()) {
            if (m.uexp > max_u_ || m.zexp < 0 || m.zexp > max_z_)
                throw std::invalid_argument("gauge term outside the layout box");
            out.push_back({index(static_cast<GaugeEntry>(e), m.uexp, m.zexp), c});
        }
    return out;  // map order within an entry is (uexp, zexp), matching the layout
}

QuadraticForm GaugeLayout::determinant_form() const {
    QuadraticForm q(size());
    q.add(index(GaugeEntry::a, 0, 0), index(GaugeEntry::d, 0, 0), 1);
    q.add(index(GaugeEntry::b, 0, 0), index(GaugeEntry::c, 0, 0), -1);
    return q;
}

GaugeSystem assemble_necessity_system(const CanonicalForm& p, const CanonicalForm& pprime,
                                      const TruncationParams& params) {
    return assemble_necessity_system(p, pprime, params, params.U, params.max_row_zexp(p.level()));
}

GaugeSystem assemble_necessity_system(const CanonicalForm& p, const CanonicalForm& pprime,
                                      const TruncationParams& params, int max_row_u, int max_row_z) {
    require_same_level(p, pprime);
    return assemble(p.poly(), pprime.poly(), p.level(), GaugeLayout(params.U, params.Z),
                    [&](int i, int m) { return i <= max_row_u && m <= max_row_z; });
}

GaugeSystem assemble_sufficiency_system(const CanonicalForm& p, const CanonicalForm& pprime,
                                        const TruncationParams& params) {
    require_same_level(p, pprime);
    return assemble(p.poly(), pprime.poly(), p.level(), GaugeLayout(params.U, params.Z),
                    [](int, int) { return true; });
}

bool verify_certificate(const Certificate& cert) {
    if (cert.p.level() != cert.pprime.level())
        return false;
    const GaugeCandidate& g = cert.gauge;
    if (!g.is_admissible())
        return false;
    if (!conjugate(cert.p, cert.pprime, g).is_v_holomorphic())
        return false;
    if (g.det_at_origin().is_zero())
        return false;
    // Holomorphy in both charts forces the u^0 part of det G to be a constant.
    BiLaurent det0 = u_constant_part(g.a * g.d - g.b * g.c);
    if (det0.size() != 1 || det0.terms().begin()->first.zexp != 0)
        throw std::logic_error("verified gauge has non-constant determinant on the exceptional divisor");
    return true;
}

std::string to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::CertifiedIso:
            return "CertifiedIso";
        case VerdictKind::CertifiedNonIso:
            return "CertifiedNonIso";
        case VerdictKind::Undecided:
            return "Undecided";
    }
    return "?";
}

Verdict decide_iso(const CanonicalForm& p, const CanonicalForm& pprime, const TruncationParams& params,
                   const DecisionOptions& options) {
    require_same_level(p, pprime);
    const int j = p.level();
    TruncationParams window = params.normalized(j);
    if (p == pprime)
        return CertifiedIso{make_certificate(p, pprime, GaugeCandidate::identity(), window, options.seed)};

    for (int round = 0;; ++round) {
        const int row_u = window.U - options.necessity_u_slack;
        const int row_z = window.max_row_zexp(j) - options.necessity_z_slack;
        WindowResult r = decide_window(assemble_necessity_system(p, pprime, window, row_u, row_z),
                                       assemble_sufficiency_system(p, pprime, window));
        if (r.outcome == WindowOutcome::Refuted)
            return CertifiedNonIso{row_u, row_z};
        if (r.outcome == WindowOutcome::Witnessed)
            return CertifiedIso{make_certificate(p, pprime, std::move(*r.gauge), window, options.seed)};
        if (round >= window.deepening_cap)
            return Undecided{window.U, window.Z};
        window = window.deepened();
    }
}

Verdict decide_iso(const CanonicalForm& p, const CanonicalForm& pprime) {
    return decide_iso(p, pprime, TruncationParams::defaults(p.level()));
}

std::optional<Certificate> transport_witness_up(const Certificate& cert) {
    const GaugeCandidate& g = cert.gauge;
    std::optional<BiLaurent> c_bar = g.c.divided_by_u_power(2);
    if (!c_bar)
        return std::nullopt;
    GaugeCandidate up{g.a, g.b.shifted(2, 0), std::move(*c_bar), g.d};
    Certificate out{phi(cert.p), phi(cert.pprime), std::move(up), cert.U + 2, cert.Z + 4, cert.seed};
    if (!verify_certificate(out))
        throw std::logic_error("transported certificate fails verification");
    return out;
}

SplitVerdict decide_split(const CanonicalForm& p, int k, const TruncationParams& params) {
    if (k < 0)
        throw std::invalid_argument("decide_split: negative level");
    const int j = p.level();
    const BiLaurent pk = truncate_u(p.poly(), k);
    if (pk.is_zero())
        return SplitVerdict::Splits;
    const BiLaurent zero;
    TruncationParams window = params.normalized(j);
    for (int round = 0;; ++round) {
        const GaugeLayout layout(k, window.Z);
        const int row_z = window.max_row_zexp(j);
        WindowResult r = decide_window(
            assemble(pk, zero, j, layout, [&](int i, int m) { return i <= k && m <= row_z; }),
            assemble(pk, zero, j, layout, [&](int i, int) { return i <= k; }));
        if (r.outcome == WindowOutcome::Refuted)
            return SplitVerdict::DoesNotSplit;
        if (r.outcome == WindowOutcome::Witnessed)
            return SplitVerdict::Splits;
        if (round >= window.deepening_cap)
            return SplitVerdict::Undecided;
        window = window.deepened();
    }
}

bool splits_at_level(const CanonicalForm& p, int k, const TruncationParams& params) {
    return decide_split(p, k, params) == SplitVerdict::Splits;
}

bool splits_at_level(const CanonicalForm& p, int k) {
    return splits_at_level(p, k, TruncationParams::defaults(p.level()));
}

}  // namespace blowup
