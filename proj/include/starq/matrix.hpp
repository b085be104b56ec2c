#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "starq/rational.hpp"

namespace starq {

/// Dense matrix over Q(i). All elimination below is exact field arithmetic:
/// nondegeneracy means full rank, there are no tolerances anywhere.
class Matrix {
public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Matrix identity(size_t n) {
        Matrix m(n, n);
        for (size_t k = 0; k < n; ++k) m.at(k, k) = GaussianRational::one();
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    GaussianRational& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
    const GaussianRational& at(size_t r, size_t c) const { return a_[r * cols_ + c]; }

    void swap_rows(size_t r1, size_t r2) {
        if (r1 == r2) return;
        for (size_t c = 0; c < cols_; ++c) std::swap(at(r1, c), at(r2, c));
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (size_t r = 0; r < rows_; ++r)
            for (size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
        return t;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw InputError("matrix product shape mismatch");
        Matrix p(rows_, o.cols_);
        for (size_t r = 0; r < rows_; ++r)
            for (size_t k = 0; k < cols_; ++k) {
                if (at(r, k).is_zero()) continue;
                for (size_t c = 0; c < o.cols_; ++c)
                    p.at(r, c) += at(r, k) * o.at(k, c);
            }
        return p;
    }

    Matrix operator+(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix sum shape mismatch");
        Matrix s = *this;
        for (size_t k = 0; k < a_.size(); ++k) s.a_[k] += o.a_[k];
        return s;
    }

    Matrix operator-(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix difference shape mismatch");
        Matrix s = *this;
        for (size_t k = 0; k < a_.size(); ++k) s.a_[k] -= o.a_[k];
        return s;
    }

    Matrix scaled(const GaussianRational& c) const {
        Matrix s = *this;
        for (auto& v : s.a_) v = v * c;
        return s;
    }

    bool is_zero() const {
        for (const auto& v : a_)
            if (!v.is_zero()) return false;
        return true;
    }

    std::vector<GaussianRational> apply(const std::vector<GaussianRational>& v) const {
        if (v.size() != cols_) throw InputError("matrix-vector shape mismatch");
        std::vector<GaussianRational> out(rows_);
        for (size_t r = 0; r < rows_; ++r)
            for (size_t c = 0; c < cols_; ++c)
                if (!at(r, c).is_zero()) out[r] += at(r, c) * v[c];
        return out;
    }

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<GaussianRational> a_;
};

struct RrefResult {
    Matrix m;
    std::vector<size_t> pivot_cols;
};

// Reduced row echelon form, deterministic first-nonzero pivoting.
inline RrefResult rref(Matrix a) {
    std::vector<size_t> piv;
    size_t r = 0;
    for (size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        size_t p = r;
        while (p < a.rows() && a.at(p, c).is_zero()) ++p;
        if (p == a.rows()) continue;
        a.swap_rows(p, r);
        GaussianRational inv = a.at(r, c).inverse();
        for (size_t j = c; j < a.cols(); ++j) a.at(r, j) *= inv;
        for (size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a.at(i, c).is_zero()) continue;
            GaussianRational f = a.at(i, c);
            for (size_t j = c; j < a.cols(); ++j) a.at(i, j) -= f * a.at(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return {std::move(a), std::move(piv)};
}

inline size_t rank(const Matrix& a) { return rref(a).pivot_cols.size(); }

// Basis of the right null space {x : Ax = 0}, one vector per free column,
// in ascending free-column order.
inline std::vector<std::vector<GaussianRational>> nullspace_basis(const Matrix& a) {
    RrefResult rr = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (size_t c : rr.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<GaussianRational>> out;
    for (size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<GaussianRational> v(a.cols());
        v[free] = GaussianRational::one();
        for (size_t r = 0; r < rr.pivot_cols.size(); ++r)
            v[rr.pivot_cols[r]] = -rr.m.at(r, free);
        out.push_back(std::move(v));
    }
    return out;
}

// One solution of Ax = b (free variables zero), or nullopt if inconsistent.
inline std::optional<std::vector<GaussianRational>> solve(const Matrix& a,
                                                          const std::vector<GaussianRational>& b) {
    if (b.size() != a.rows()) throw InputError("solve: rhs size mismatch");
    Matrix aug(a.rows(), a.cols() + 1);
    for (size_t r = 0; r < a.rows(); ++r) {
        for (size_t c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols()) = b[r];
    }
    RrefResult rr = rref(std::move(aug));
    for (size_t c : rr.pivot_cols)
        if (c == a.cols()) return std::nullopt;
    std::vector<GaussianRational> x(a.cols());
    for (size_t r = 0; r < rr.pivot_cols.size(); ++r)
        x[rr.pivot_cols[r]] = rr.m.at(r, a.cols());
    return x;
}

inline std::optional<Matrix> inverse(const Matrix& a) {
    if (a.rows() != a.cols()) throw InputError("inverse of non-square matrix");
    size_t n = a.rows();
    Matrix aug(n, 2 * n);
    for (size_t r = 0; r < n; ++r) {
        for (size_t c = 0; c < n; ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, n + r) = GaussianRational::one();
    }
    RrefResult rr = rref(std::move(aug));
    if (rr.pivot_cols.size() != n || rr.pivot_cols.back() != n - 1) return std::nullopt;
    Matrix inv(n, n);
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) inv.at(r, c) = rr.m.at(r, n + c);
    return inv;
}

/// Incremental row reduction for streamed linear systems [A|b].
/// Rows are folded into a maintained RREF; conflicts (0 = c) surface
/// immediately. Once rank equals the number of unknowns, callers can
/// extract the unique solution and verify remaining rows by substitution.
class RowReducer {
public:
    enum class Add { Zero, Pivot, Conflict };

    explicit RowReducer(size_t unknowns) : n_(unknowns), row_of_pivot_(unknowns, -1) {}

    size_t unknowns() const { return n_; }
    size_t rank() const { return rows_.size(); }
    bool complete() const { return rank() == n_; }

    Add add_row(std::vector<GaussianRational> row, GaussianRational rhs) {
        if (row.size() != n_) throw InputError("RowReducer: row size mismatch");
        row.push_back(std::move(rhs));
        reduce(row);
        size_t lead = n_ + 1;
        for (size_t c = 0; c < n_; ++c) {
            if (!row[c].is_zero()) { lead = c; break; }
        }
        if (lead > n_) {
            return row[n_].is_zero() ? Add::Zero : Add::Conflict;
        }
        GaussianRational inv = row[lead].inverse();
        for (auto& v : row) v *= inv;
        // keep full RREF: clear this column from existing rows
        for (auto& r : rows_) {
            if (r[lead].is_zero()) continue;
            GaussianRational f = r[lead];
            for (size_t c = 0; c <= n_; ++c) r[c] -= f * row[c];
        }
        row_of_pivot_[lead] = static_cast<long>(rows_.size());
        pivots_.push_back(lead);
        rows_.push_back(std::move(row));
        return Add::Pivot;
    }

    // Unique solution; only valid when complete().
    std::vector<GaussianRational> solution() const {
        if (!complete()) throw DatumError("RowReducer: system not of full rank");
        std::vector<GaussianRational> x(n_);
        for (size_t k = 0; k < rows_.size(); ++k) x[pivots_[k]] = rows_[k][n_];
        return x;
    }

    static bool consistent(const std::vector<GaussianRational>& row, const GaussianRational& rhs,
                           const std::vector<GaussianRational>& solution) {
        GaussianRational acc;
        for (size_t c = 0; c < row.size(); ++c)
            if (!row[c].is_zero()) acc += row[c] * solution[c];
        return acc == rhs;
    }

private:
    void reduce(std::vector<GaussianRational>& row) const {
        for (size_t c = 0; c < n_; ++c) {
            if (row[c].is_zero() || row_of_pivot_[c] < 0) continue;
            const auto& r = rows_[static_cast<size_t>(row_of_pivot_[c])];
            GaussianRational f = row[c];
            for (size_t j = c; j <= n_; ++j) row[j] -= f * r[j];
        }
    }

    size_t n_;
    std::vector<std::vector<GaussianRational>> rows_;
    std::vector<size_t> pivots_;
    std::vector<long> row_of_pivot_;
};

} // namespace starq
