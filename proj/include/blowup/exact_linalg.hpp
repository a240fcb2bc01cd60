#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "blowup/gaussian_rational.hpp"

namespace blowup {

using Vector = std::vector<GaussianRational>;

struct SparseEntry {
    std::size_t col;
    GaussianRational value;

    friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Sorted by column, no stored zeros.
using SparseVector = std::vector<SparseEntry>;

SparseVector to_sparse(const Vector& v);
Vector to_dense(const SparseVector& v, std::size_t n);
GaussianRational sparse_get(const SparseVector& v, std::size_t col);
SparseVector sparse_add(const SparseVector& x, const SparseVector& y);
SparseVector sparse_scale(const SparseVector& x, const GaussianRational& s);

/// rows x cols matrix over Q(i). Entries are addressed densely but stored
/// row-wise sparse; the linearized gauge systems are overwhelmingly zero.
class ExactMatrix {
public:
    ExactMatrix(std::size_t rows, std::size_t cols);
    static ExactMatrix from_rows(std::initializer_list<std::initializer_list<GaussianRational>> rows);

    std::size_t rows() const noexcept { return data_.size(); }
    std::size_t cols() const noexcept { return cols_; }

    GaussianRational at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const GaussianRational& v);
    const SparseVector& row(std::size_t r) const { return data_.at(r); }
    /// Appends a row; entries must be sorted, in range and nonzero.
    void append_row(SparseVector row);

    SparseVector apply(const SparseVector& x) const;
    Vector apply(const Vector& x) const;

private:
    std::size_t cols_;
    std::vector<SparseVector> data_;
};

/// Reduced row echelon form: each row has a unit entry at its pivot column
/// and otherwise only non-pivot columns.
struct Echelon {
    std::size_t cols = 0;
    std::vector<std::size_t> pivot_cols;
    std::vector<SparseVector> rows;
    std::vector<bool> is_pivot;
    bool inconsistent = false;  // only meaningful for augmented systems
};

/// Columns >= pivot_limit are never chosen as pivots (augmented right-hand
/// sides). A row left with only such columns marks the system inconsistent.
Echelon reduced_row_echelon(const ExactMatrix& m, std::size_t pivot_limit);
Echelon reduced_row_echelon(const ExactMatrix& m);

std::size_t rank(const ExactMatrix& m);

/// Exact basis of {x : Mx = 0}, one vector per free column in increasing
/// column order; the vector for free column f has a 1 at f.
std::vector<SparseVector> nullspace(const ExactMatrix& m);

/// A solution of Mx = rhs with free columns set to zero, or nullopt.
std::optional<Vector> solve(const ExactMatrix& m, const Vector& rhs);

/// q(x) = sum of coef * x_row * x_col over terms with row <= col.
class QuadraticForm {
public:
    struct Term {
        std::size_t row;
        std::size_t col;
        GaussianRational coef;
    };

    explicit QuadraticForm(std::size_t dimension) : dim_(dimension) {}
    QuadraticForm& add(std::size_t row, std::size_t col, const GaussianRational& coef);

    std::size_t dimension() const noexcept { return dim_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    /// Sorted, distinct variables that occur in some term.
    std::vector<std::size_t> support() const;

    GaussianRational operator()(const SparseVector& x) const;
    GaussianRational operator()(const Vector& x) const;

private:
    std::size_t dim_;
    std::vector<Term> terms_;
};

struct SpanVanishing {
    bool vanishes = true;
    /// When !vanishes: a vector of the span with q(witness) != 0.
    std::optional<SparseVector> witness;
};

/// Decides q == 0 on span(basis) by polarization: it suffices that q(v_i) = 0
/// and q(v_i + v_j) = 0 for all i < j. Candidates are tried in that order, so
/// the witness is reproducible.
SpanVanishing quadratic_vanishes_on_span(const QuadraticForm& q, const std::vector<SparseVector>& basis);

}  // namespace blowup
