#ifndef HARDLEF_LINALG_HPP
#define HARDLEF_LINALG_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "exact.hpp"

namespace hardlef {

/// Row-major dense matrix.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const T& x) { return x == 0; });
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    template <typename U>
    Matrix<U> cast() const {
        Matrix<U> out(rows_, cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(r, c) = U((*this)(r, c));
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix sum shape mismatch");
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }

    friend Matrix operator-(Matrix a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix difference shape mismatch");
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
        return a;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (b(k, j) != 0) out(i, j) += aik * b(k, j);
            }
        return out;
    }

    friend Matrix operator*(const T& s, Matrix a) {
        for (auto& x : a.data_) x *= s;
        return a;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

/// Block-diagonal concatenation.
template <typename T>
Matrix<T> direct_sum(const std::vector<Matrix<T>>& blocks) {
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) r += b.rows(), c += b.cols();
    Matrix<T> out(r, c);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) out(r0 + i, c0 + j) = b(i, j);
        r0 += b.rows();
        c0 += b.cols();
    }
    return out;
}

/// Fraction-free (Bareiss) determinant with row pivoting. Every division is exact.
inline Integer bareiss_determinant(IntMatrix a) {
    if (!a.square()) throw DimensionMismatch("determinant of a non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = k; j < n; ++j) std::swap(a(k, j), a(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const Integer aik = a(i, k);
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = a(k, k) * a(i, j);
                if (aik != 0) v -= aik * a(k, j);
                a(i, j) = v / prev; // exact by Sylvester's identity
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> rref(RatMatrix& a) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t p = row;
        while (p < a.rows() && a(p, col) == 0) ++p;
        if (p == a.rows()) continue;
        if (p != row)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(row, j));
        const Rational inv = 1 / a(row, col);
        for (std::size_t j = col; j < a.cols(); ++j)
            if (a(row, j) != 0) a(row, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || a(i, col) == 0) continue;
            const Rational f = a(i, col);
            for (std::size_t j = col; j < a.cols(); ++j)
                if (a(row, j) != 0) a(i, j) -= f * a(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t rank(RatMatrix a) { return rref(a).size(); }

inline Rational determinant(RatMatrix a) {
    if (!a.square()) throw DimensionMismatch("determinant of a non-square matrix");
    const std::size_t n = a.rows();
    Rational det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a(p, k) == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(a(k, j), a(p, j));
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) continue;
            const Rational f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j)
                if (a(k, j) != 0) a(i, j) -= f * a(k, j);
        }
    }
    return det;
}

/// Some x with a * x = b, or nullopt when the system is inconsistent.
inline std::optional<std::vector<Rational>> solve(const RatMatrix& a, const std::vector<Rational>& b) {
    if (b.size() != a.rows()) throw DimensionMismatch("right-hand side length mismatch");
    RatMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    const auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    std::vector<Rational> x(a.cols(), Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
    return x;
}

/// Basis of the right kernel, one vector per free column.
inline std::vector<std::vector<Rational>> nullspace(const RatMatrix& a) {
    RatMatrix r = a;
    const auto pivots = rref(r);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(a.cols(), Rational(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Matrix whose columns are the given vectors (all of length `rows`).
inline RatMatrix from_columns(std::size_t rows, const std::vector<std::vector<Rational>>& cols) {
    RatMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw DimensionMismatch("column length mismatch");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

/// Horizontal concatenation [a | b].
template <typename T>
Matrix<T> hconcat(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows()) throw DimensionMismatch("hconcat row mismatch");
    Matrix<T> m(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
    }
    return m;
}

/// True when the column spans of a and b coincide.
inline bool same_column_span(const RatMatrix& a, const RatMatrix& b) {
    const auto ra = rank(a);
    return ra == rank(b) && ra == rank(hconcat(a, b));
}

/// Sparse integer row: (column, nonzero value), sorted by column.
using SparseRow = std::vector<std::pair<std::size_t, Integer>>;

/// Incremental fraction-free Gaussian elimination over the integers.
///
/// Rows are reduced against the pivot rows collected so far with
/// r <- lead(p) * r - lead(r) * p and then divided by their content, so every
/// entry stays an integer and no fractions are formed. The number of pivot
/// rows is the rank of everything inserted.
class SparseEliminator {
public:
    /// Returns true when the row was independent of the rows inserted before.
    bool insert(SparseRow row) {
        normalize(row);
        while (!row.empty()) {
            auto it = pivots_.find(row.front().first);
            if (it == pivots_.end()) {
                pivots_.emplace(row.front().first, std::move(row));
                return true;
            }
            row = combine(it->second, row);
            normalize(row);
        }
        return false;
    }

    std::size_t rank() const noexcept { return pivots_.size(); }

private:
    static void normalize(SparseRow& row) {
        Integer g = 0;
        for (const auto& [c, v] : row) {
            g = boost::multiprecision::gcd(g, v);
            if (g == 1) return;
        }
        if (g > 1)
            for (auto& e : row) e.second /= g;
    }

    static SparseRow combine(const SparseRow& pivot, const SparseRow& row) {
        const Integer& a = pivot.front().second;
        const Integer& b = row.front().second;
        SparseRow out;
        out.reserve(pivot.size() + row.size());
        std::size_t i = 0, j = 0;
        while (i < pivot.size() || j < row.size()) {
            std::size_t ci = i < pivot.size() ? pivot[i].first : SIZE_MAX;
            std::size_t cj = j < row.size() ? row[j].first : SIZE_MAX;
            Integer v;
            std::size_t c;
            if (ci == cj) {
                c = ci;
                v = a * row[j].second - b * pivot[i].second;
                ++i, ++j;
            } else if (cj < ci) {
                c = cj;
                v = a * row[j].second;
                ++j;
            } else {
                c = ci;
                v = -b * pivot[i].second;
                ++i;
            }
            if (v != 0) out.emplace_back(c, std::move(v));
        }
        return out;
    }

    std::map<std::size_t, SparseRow> pivots_;
};

inline std::size_t sparse_rank(const std::vector<SparseRow>& rows) {
    SparseEliminator e;
    for (const auto& r : rows) e.insert(r);
    return e.rank();
}

} // namespace hardlef

#endif // HARDLEF_LINALG_HPP
