#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "blowup/bilaurent.hpp"
#include "blowup/canonical_form.hpp"
#include "blowup/exact_linalg.hpp"

namespace blowup {

/// A gauge matrix [[a, b], [c, d]] of functions holomorphic in (z, u):
/// every stored exponent is nonnegative.
struct GaugeCandidate {
    BiLaurent a, b, c, d;

    /// Throws std::invalid_argument if some entry has a negative z exponent.
    static GaugeCandidate make(BiLaurent a, BiLaurent b, BiLaurent c, BiLaurent d);
    static GaugeCandidate identity();
    static GaugeCandidate diagonal(const GaussianRational& t, const GaussianRational& s);

    bool is_admissible() const;
    /// a00 d00 - b00 c00: det G at z = u = 0.
    GaussianRational det_at_origin() const;

    friend bool operator==(const GaugeCandidate&, const GaugeCandidate&) = default;
};

/// T' G T^-1 for T = transition_matrix(p), T' = transition_matrix(p').
struct ConjugateMatrix {
    BiLaurent alpha, beta, gamma, delta;

    bool is_v_holomorphic() const;
};

/// alpha = a + z^-j p'c, beta = z^2j b + z^j (p'd - ap) - pp'c,
/// gamma = z^-2j c, delta = d - z^-j pc.
/// Throws std::invalid_argument on a level mismatch.
ConjugateMatrix conjugate(const CanonicalForm& p, const CanonicalForm& pprime, const GaugeCandidate& g);

/// Box of gauge unknowns: exponents 0 <= uexp <= U, 0 <= zexp <= Z.
struct TruncationParams {
    int U = 0;
    int Z = 0;
    int deepening_cap = 2;

    /// U = 2j, Z = 4j, two deepening rounds.
    static TruncationParams defaults(int j);
    /// Raises U to at least 2j-2 and Z to at least 2j+1.
    TruncationParams normalized(int j) const;
    TruncationParams deepened() const { return {U + 2, Z + 4, deepening_cap}; }
    /// Largest z exponent of a necessity row; accounts for the z^-2j shift in gamma.
    int max_row_zexp(int j) const { return Z - 2 * j; }

    friend bool operator==(const TruncationParams&, const TruncationParams&) = default;
};

enum class GaugeEntry { a = 0, b = 1, c = 2, d = 3 };
enum class ConjugateEntry { alpha = 0, beta = 1, gamma = 2, delta = 3 };

struct GaugeColumn {
    GaugeEntry entry;
    int uexp;
    int zexp;
};

/// Column labeling of the gauge unknowns, column-major over (entry, uexp, zexp).
class GaugeLayout {
public:
    GaugeLayout(int max_u, int max_z);

    int max_u() const noexcept { return max_u_; }
    int max_z() const noexcept { return max_z_; }
    std::size_t size() const noexcept { return 4 * per_entry(); }
    std::size_t index(GaugeEntry e, int uexp, int zexp) const;
    GaugeColumn label(std::size_t col) const;

    GaugeCandidate gauge(const SparseVector& x) const;
    /// Throws std::invalid_argument if g has a term outside the box.
    SparseVector vector(const GaugeCandidate& g) const;
    /// x(a00) x(d00) - x(b00) x(c00).
    QuadraticForm determinant_form() const;

private:
    std::size_t per_entry() const noexcept {
        return static_cast<std::size_t>(max_u_ + 1) * static_cast<std::size_t>(max_z_ + 1);
    }

    int max_u_;
    int max_z_;
};

/// One forbidden monomial z^zexp u^uexp (zexp > uexp) of one conjugate entry.
struct RowLabel {
    ConjugateEntry entry;
    int uexp;
    int zexp;
};

struct GaugeSystem {
    GaugeLayout layout;
    ExactMatrix matrix;
    std::vector<RowLabel> rows;
};

/// Rows for the forbidden monomials with uexp <= U and zexp <= Z - 2j. Any
/// untruncated witness restricts to a solution of these rows.
GaugeSystem assemble_necessity_system(const CanonicalForm& p, const CanonicalForm& pprime,
                                      const TruncationParams& params);
/// Same, with explicit row caps; used to probe the row window.
GaugeSystem assemble_necessity_system(const CanonicalForm& p, const CanonicalForm& pprime,
                                      const TruncationParams& params, int max_row_u, int max_row_z);
/// Rows for every forbidden monomial of the exact conjugate of a gauge in
/// the box; any solution is a truncation-free witness.
GaugeSystem assemble_sufficiency_system(const CanonicalForm& p, const CanonicalForm& pprime,
                                        const TruncationParams& params);

struct Certificate {
    CanonicalForm p;
    CanonicalForm pprime;
    GaugeCandidate gauge;
    int U = 0;
    int Z = 0;
    std::uint64_t seed = 0;

    int level() const { return p.level(); }
    friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// G is U-holomorphic, its conjugate is V-holomorphic and det G(0,0) != 0.
/// Nothing is truncated: true is a proof that p and p' are isomorphic.
bool verify_certificate(const Certificate& cert);

enum class VerdictKind { CertifiedIso, CertifiedNonIso, Undecided };

std::string to_string(VerdictKind k);

struct CertifiedIso {
    Certificate certificate;
};
/// The necessity system refuted every witness at this row window.
struct CertifiedNonIso {
    int U;
    int Mz;
};
struct Undecided {
    int U;
    int Z;
};

class Verdict {
public:
    using Value = std::variant<CertifiedIso, CertifiedNonIso, Undecided>;

    Verdict(CertifiedIso v) : value_(std::move(v)) {}  // NOLINT: implicit from alternatives
    Verdict(CertifiedNonIso v) : value_(v) {}       // NOLINT
    Verdict(Undecided v) : value_(v) {}             // NOLINT

    VerdictKind kind() const { return static_cast<VerdictKind>(value_.index()); }
    bool is_iso() const { return kind() == VerdictKind::CertifiedIso; }
    bool is_non_iso() const { return kind() == VerdictKind::CertifiedNonIso; }
    const Value& value() const noexcept { return value_; }
    /// Throws std::bad_variant_access unless is_iso().
    const Certificate& certificate() const { return std::get<CertifiedIso>(value_).certificate; }

private:
    Value value_;
};

struct DecisionOptions {
    /// Shrinks the necessity row window by this many u (resp. z) levels.
    int necessity_u_slack = 0;
    int necessity_z_slack = 0;
    /// Recorded in emitted certificates.
    std::uint64_t seed = 0;
};

/// Decides p ~ p'. Throws std::invalid_argument on a level mismatch.
Verdict decide_iso(const CanonicalForm& p, const CanonicalForm& pprime, const TruncationParams& params,
                   const DecisionOptions& options = {});
Verdict decide_iso(const CanonicalForm& p, const CanonicalForm& pprime);

/// Ā = [[a, u^2 b], [u^-2 c, d]] certifies phi(p) ~ phi(p'). nullopt when u^2 does not divide c.
std::optional<Certificate> transport_witness_up(const Certificate& cert);

enum class SplitVerdict { Splits, DoesNotSplit, Undecided };

/// Is truncate_u(p, k) equivalent to the zero form modulo u^(k+1)?
SplitVerdict decide_split(const CanonicalForm& p, int k, const TruncationParams& params);
/// decide_split == Splits.
bool splits_at_level(const CanonicalForm& p, int k, const TruncationParams& params);
bool splits_at_level(const CanonicalForm& p, int k);

}  // namespace blowup
