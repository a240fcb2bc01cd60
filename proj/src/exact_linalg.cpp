#include "blowup/exact_linalg.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace blowup {

namespace {

template <class Vec>
auto find_col(Vec& v, std::size_t col) {
    return std::lower_bound(v.begin(), v.end(), col,
                            [](const SparseEntry& e, std::size_t c) { return e.col < c; });
}

// target -= factor * src
void sub_scaled(SparseVector& target, const GaussianRational& factor, const SparseVector& src,
                SparseVector& scratch) {
    scratch.clear();
    scratch.reserve(target.size() + src.size());
    auto t = target.begin();
    auto s = src.begin();
    while (t != target.end() || s != src.end()) {
        if (s == src.end() || (t != target.end() && t->col < s->col)) {
            scratch.push_back(std::move(*t));
            ++t;
        } else if (t == target.end() || s->col < t->col) {
            scratch.push_back({s->col, -(factor * s->value)});
            ++s;
        } else {
            t->value.sub_mul(factor, s->value);
            if (!t->value.is_zero())
                scratch.push_back(std::move(*t));
            ++t;
            ++s;
        }
    }
    target.swap(scratch);
}

std::size_t pivotable_count(const SparseVector& row, std::size_t limit) {
    return static_cast<std::size_t>(
        std::count_if(row.begin(), row.end(), [limit](const SparseEntry& e) { return e.col < limit; }));
}

}  // namespace

SparseVector to_sparse(const Vector& v) {
    SparseVector out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero())
            out.push_back({i, v[i]});
    return out;
}

Vector to_dense(const SparseVector& v, std::size_t n) {
    Vector out(n);
    for (const auto& e : v) {
        if (e.col >= n)
            throw std::out_of_range("to_dense: column out of range");
        out[e.col] = e.value;
    }
    return out;
}

GaussianRational sparse_get(const SparseVector& v, std::size_t col) {
    auto it = find_col(v, col);
    return (it != v.end() && it->col == col) ? it->value : GaussianRational{};
}

SparseVector sparse_add(const SparseVector& x, const SparseVector& y) {
    SparseVector out = x, scratch;
    sub_scaled(out, GaussianRational(-1), y, scratch);
    return out;
}

SparseVector sparse_scale(const SparseVector& x, const GaussianRational& s) {
    if (s.is_zero())
        return {};
    SparseVector out = x;
    for (auto& e : out)
        e.value *= s;
    return out;
}

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows) {
    if (cols == 0)
        throw std::invalid_argument("ExactMatrix: zero columns");
}

ExactMatrix ExactMatrix::from_rows(std::initializer_list<std::initializer_list<GaussianRational>> rows) {
    if (rows.size() == 0 || rows.begin()->size() == 0)
        throw std::invalid_argument("ExactMatrix: empty initializer");
    ExactMatrix m(0, rows.begin()->size());
    for (const auto& r : rows) {
        if (r.size() != m.cols_)
            throw std::invalid_argument("ExactMatrix: ragged initializer");
        m.append_row(to_sparse(Vector(r)));
    }
    return m;
}

GaussianRational ExactMatrix::at(std::size_t r, std::size_t c) const {
    if (c >= cols_)
        throw std::out_of_range("ExactMatrix::at");
    return sparse_get(data_.at(r), c);
}

void ExactMatrix::set(std::size_t r, std::size_t c, const GaussianRational& v) {
    if (c >= cols_)
        throw std::out_of_range("ExactMatrix::set");
    auto& row = data_.at(r);
    auto it = find_col(row, c);
    if (it != row.end() && it->col == c) {
        if (v.is_zero())
            row.erase(it);
        else
            it->value = v;
    } else if (!v.is_zero()) {
        row.insert(it, {c, v});
    }
}

void ExactMatrix::append_row(SparseVector row) {
    for (std::size_t k = 0; k < row.size(); ++k) {
        if (row[k].col >= cols_ || row[k].value.is_zero() || (k > 0 && row[k - 1].col >= row[k].col))
            throw std::invalid_argument("ExactMatrix::append_row: malformed sparse row");
    }
    data_.push_back(std::move(row));
}

SparseVector ExactMatrix::apply(const SparseVector& x) const {
    SparseVector out;
    for (std::size_t r = 0; r < data_.size(); ++r) {
        GaussianRational acc;
        auto xi = x.begin();
        for (const auto& e : data_[r]) {
            while (xi != x.end() && xi->col < e.col)
                ++xi;
            if (xi == x.end())
                break;
            if (xi->col == e.col)
                acc += e.value * xi->value;
        }
        if (!acc.is_zero())
            out.push_back({r, std::move(acc)});
    }
    return out;
}

Vector ExactMatrix::apply(const Vector& x) const {
    if (x.size() != cols_)
        throw std::invalid_argument("ExactMatrix::apply: dimension mismatch");
    Vector out(data_.size());
    for (std::size_t r = 0; r < data_.size(); ++r)
        for (const auto& e : data_[r])
            if (!x[e.col].is_zero())
                out[r] += e.value * x[e.col];
    return out;
}

Echelon reduced_row_echelon(const ExactMatrix& m, std::size_t pivot_limit) {
    Echelon ech;
    ech.cols = m.cols();
    ech.is_pivot.assign(m.cols(), false);

    std::vector<SparseVector> remaining;
    remaining.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (!m.row(r).empty())
            remaining.push_back(m.row(r));

    SparseVector scratch;
    while (!remaining.empty()) {
        // Markowitz-style: sparsest row first, then the smallest entry in it.
        std::size_t best = 0;
        std::size_t best_nnz = std::numeric_limits<std::size_t>::max();
        for (std::size_t r = 0; r < remaining.size(); ++r) {
            std::size_t nnz = pivotable_count(remaining[r], pivot_limit);
            if (nnz < best_nnz) {
                best_nnz = nnz;
                best = r;
            }
        }
        SparseVector pivot_row = std::move(remaining[best]);
        remaining[best] = std::move(remaining.back());
        remaining.pop_back();
        if (best_nnz == 0) {
            ech.inconsistent = true;  // 0 = nonzero rhs
            continue;
        }

        std::size_t pivot_pos = 0;
        std::size_t pivot_bits = std::numeric_limits<std::size_t>::max();
        for (std::size_t k = 0; k < pivot_row.size() && pivot_row[k].col < pivot_limit; ++k) {
            std::size_t bits = pivot_row[k].value.bit_size();
            if (bits < pivot_bits) {
                pivot_bits = bits;
                pivot_pos = k;
            }
        }
        const std::size_t pcol = pivot_row[pivot_pos].col;
        if (!pivot_row[pivot_pos].value.is_one()) {
            GaussianRational inv = pivot_row[pivot_pos].value.inverse();
            for (auto& e : pivot_row)
                e.value *= inv;
        }

        for (std::size_t r = 0; r < remaining.size();) {
            auto it = find_col(remaining[r], pcol);
            if (it != remaining[r].end() && it->col == pcol) {
                GaussianRational factor = it->value;
                sub_scaled(remaining[r], factor, pivot_row, scratch);
                if (remaining[r].empty()) {
                    remaining[r] = std::move(remaining.back());
                    remaining.pop_back();
                    continue;
                }
            }
            ++r;
        }
        ech.pivot_cols.push_back(pcol);
        ech.is_pivot[pcol] = true;
        ech.rows.push_back(std::move(pivot_row));
    }

    // Back substitution: later pivots are already free of other pivot columns.
    std::vector<std::size_t> pivot_index(m.cols(), 0);
    for (std::size_t k = 0; k < ech.pivot_cols.size(); ++k)
        pivot_index[ech.pivot_cols[k]] = k;
    for (std::size_t k = ech.pivot_cols.size(); k-- > 0;) {
        std::vector<std::size_t> targets;
        for (const auto& e : ech.rows[k])
            if (e.col != ech.pivot_cols[k] && e.col < m.cols() && ech.is_pivot[e.col])
                targets.push_back(e.col);
        for (std::size_t col : targets) {
            GaussianRational factor = sparse_get(ech.rows[k], col);
            if (!factor.is_zero())
                sub_scaled(ech.rows[k], factor, ech.rows[pivot_index[col]], scratch);
        }
    }
    return ech;
}

Echelon reduced_row_echelon(const ExactMatrix& m) { return reduced_row_echelon(m, m.cols()); }

std::size_t rank(const ExactMatrix& m) { return reduced_row_echelon(m).pivot_cols.size(); }

std::vector<SparseVector> nullspace(const ExactMatrix& m) {
    Echelon ech = reduced_row_echelon(m);
    const std::size_t n = m.cols();
    std::vector<std::size_t> basis_of(n, std::numeric_limits<std::size_t>::max());
    std::vector<SparseVector> basis;
    for (std::size_t c = 0; c < n; ++c) {
        if (!ech.is_pivot[c]) {
            basis_of[c] = basis.size();
            basis.push_back({{c, GaussianRational(1)}});
        }
    }
    for (std::size_t k = 0; k < ech.rows.size(); ++k)
        for (const auto& e : ech.rows[k])
            if (e.col != ech.pivot_cols[k])
                basis[basis_of[e.col]].push_back({ech.pivot_cols[k], -e.value});
    for (auto& v : basis)
        std::sort(v.begin(), v.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
    return basis;
}

std::optional<Vector> solve(const ExactMatrix& m, const Vector& rhs) {
    if (rhs.size() != m.rows())
        throw std::invalid_argument("solve: rhs dimension mismatch");
    const std::size_t n = m.cols();
    ExactMatrix aug(0, n + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        SparseVector row = m.row(r);
        if (!rhs[r].is_zero())
            row.push_back({n, rhs[r]});
        aug.append_row(std::move(row));
    }
    Echelon ech = reduced_row_echelon(aug, n);
    if (ech.inconsistent)
        return std::nullopt;
    Vector x(n);
    for (std::size_t k = 0; k < ech.rows.size(); ++k)
        x[ech.pivot_cols[k]] = sparse_get(ech.rows[k], n);
    return x;
}

QuadraticForm& QuadraticForm::add(std::size_t row, std::size_t col, const GaussianRational& coef) {
    if (row > col)
        std::swap(row, col);
    if (col >= dim_)
        throw std::out_of_range("QuadraticForm::add");
    if (!coef.is_zero())
        terms_.push_back({row, col, coef});
    return *this;
}

std::vector<std::size_t> QuadraticForm::support() const {
    std::vector<std::size_t> s;
    for (const auto& t : terms_) {
        s.push_back(t.row);
        s.push_back(t.col);
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

GaussianRational QuadraticForm::operator()(const SparseVector& x) const {
    GaussianRational acc;
    for (const auto& t : terms_) {
        GaussianRational xr = sparse_get(x, t.row);
        if (xr.is_zero())
            continue;
        acc += t.coef * xr * sparse_get(x, t.col);
    }
    return acc;
}

GaussianRational QuadraticForm::operator()(const Vector& x) const {
    if (x.size() != dim_)
        throw std::invalid_argument("QuadraticForm: dimension mismatch");
    GaussianRational acc;
    for (const auto& t : terms_)
        acc += t.coef * x[t.row] * x[t.col];
    return acc;
}

SpanVanishing quadratic_vanishes_on_span(const QuadraticForm& q, const std::vector<SparseVector>& basis) {
    const std::vector<std::size_t> vars = q.support();
    // Restrict every basis vector to the variables q actually reads.
    std::vector<SparseVector> restricted(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t var : vars) {
            GaussianRational x = sparse_get(basis[i], var);
            if (!x.is_zero())
                restricted[i].push_back({var, std::move(x)});
        }
        if (!basis[i].empty() && basis[i].back().col >= q.dimension())
            throw std::invalid_argument("quadratic_vanishes_on_span: basis dimension mismatch");
    }

    for (std::size_t i = 0; i < basis.size(); ++i)
        if (!restricted[i].empty() && !q(restricted[i]).is_zero())
            return {false, basis[i]};
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t k = i + 1; k < basis.size(); ++k) {
            if (restricted[i].empty() && restricted[k].empty())
                continue;
            if (!q(sparse_add(restricted[i], restricted[k])).is_zero())
                return {false, sparse_add(basis[i], basis[k])};
        }
    }
    return {true, std::nullopt};
}

}  // namespace blowup
