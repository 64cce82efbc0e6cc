#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "bernstein/errors.hpp"
#include "bernstein/fields.hpp"

namespace bernstein {

template <FieldType F>
using Vec = std::vector<typename F::Elem>;

/// Dense row-major matrix. For an endomorphism, column j is the image of the
/// j-th basis vector.
template <FieldType F>
struct Mat {
    using Elem = typename F::Elem;

    std::size_t rows = 0, cols = 0;
    std::vector<Elem> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c, Elem fill) : rows(r), cols(c), a(r * c, fill) {}

    Elem& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Elem& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    bool operator==(const Mat&) const = default;

    Vec<F> col(std::size_t j) const {
        Vec<F> v(rows);
        for (std::size_t i = 0; i < rows; ++i) v[i] = at(i, j);
        return v;
    }

    void set_col(std::size_t j, const Vec<F>& v) {
        for (std::size_t i = 0; i < rows; ++i) at(i, j) = v[i];
    }
};

template <FieldType F>
Mat<F> zero_mat(const F& k, std::size_t r, std::size_t c) {
    return Mat<F>(r, c, k.zero());
}

template <FieldType F>
Mat<F> identity_mat(const F& k, std::size_t n) {
    Mat<F> m(n, n, k.zero());
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = k.one();
    return m;
}

template <FieldType F>
Vec<F> zero_vec(const F& k, std::size_t n) {
    return Vec<F>(n, k.zero());
}

template <FieldType F>
bool vec_is_zero(const F& k, const Vec<F>& v) {
    for (const auto& x : v)
        if (!k.is_zero(x)) return false;
    return true;
}

template <FieldType F>
bool vec_eq(const F& k, const Vec<F>& u, const Vec<F>& v) {
    if (u.size() != v.size()) return false;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (!k.eq(u[i], v[i])) return false;
    return true;
}

template <FieldType F>
Vec<F> vec_add(const F& k, const Vec<F>& u, const Vec<F>& v) {
    Vec<F> w(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) w[i] = k.add(u[i], v[i]);
    return w;
}

template <FieldType F>
Vec<F> vec_sub(const F& k, const Vec<F>& u, const Vec<F>& v) {
    Vec<F> w(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) w[i] = k.sub(u[i], v[i]);
    return w;
}

template <FieldType F>
Vec<F> vec_scale(const F& k, const typename F::Elem& c, const Vec<F>& v) {
    Vec<F> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = k.mul(c, v[i]);
    return w;
}

template <FieldType F>
typename F::Elem dot(const F& k, const Vec<F>& u, const Vec<F>& v) {
    auto s = k.zero();
    for (std::size_t i = 0; i < u.size(); ++i) s = k.add(s, k.mul(u[i], v[i]));
    return s;
}

template <FieldType F>
Vec<F> mat_apply(const F& k, const Mat<F>& m, const Vec<F>& v) {
    if (m.cols != v.size()) throw DimensionMismatch("mat_apply: matrix/vector size");
    Vec<F> w(m.rows, k.zero());
    for (std::size_t i = 0; i < m.rows; ++i) {
        auto s = k.zero();
        for (std::size_t j = 0; j < m.cols; ++j) s = k.add(s, k.mul(m.at(i, j), v[j]));
        w[i] = s;
    }
    return w;
}

template <FieldType F>
Mat<F> mat_mul(const F& k, const Mat<F>& x, const Mat<F>& y) {
    if (x.cols != y.rows) throw DimensionMismatch("mat_mul: inner dimensions");
    Mat<F> z(x.rows, y.cols, k.zero());
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t l = 0; l < x.cols; ++l) {
            const auto& xil = x.at(i, l);
            if (k.is_zero(xil)) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                z.at(i, j) = k.add(z.at(i, j), k.mul(xil, y.at(l, j)));
        }
    return z;
}

template <FieldType F>
Mat<F> mat_add(const F& k, const Mat<F>& x, const Mat<F>& y) {
    Mat<F> z(x.rows, x.cols, k.zero());
    for (std::size_t i = 0; i < x.a.size(); ++i) z.a[i] = k.add(x.a[i], y.a[i]);
    return z;
}

template <FieldType F>
Mat<F> mat_sub(const F& k, const Mat<F>& x, const Mat<F>& y) {
    Mat<F> z(x.rows, x.cols, k.zero());
    for (std::size_t i = 0; i < x.a.size(); ++i) z.a[i] = k.sub(x.a[i], y.a[i]);
    return z;
}

template <FieldType F>
Mat<F> mat_scale(const F& k, const typename F::Elem& c, const Mat<F>& x) {
    Mat<F> z = x;
    for (auto& e : z.a) e = k.mul(c, e);
    return z;
}

template <FieldType F>
Mat<F> transpose(const Mat<F>& m) {
    Mat<F> t(m.cols, m.rows, m.a.empty() ? typename F::Elem{} : m.a[0]);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
    return t;
}

template <FieldType F>
bool mat_eq(const F& k, const Mat<F>& x, const Mat<F>& y) {
    if (x.rows != y.rows || x.cols != y.cols) return false;
    for (std::size_t i = 0; i < x.a.size(); ++i)
        if (!k.eq(x.a[i], y.a[i])) return false;
    return true;
}

/// In-place reduced row echelon form; returns the pivot columns.
template <FieldType F>
std::vector<std::size_t> rref(const F& k, Mat<F>& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t sel = row;
        while (sel < m.rows && k.is_zero(m.at(sel, col))) ++sel;
        if (sel == m.rows) continue;
        for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(row, j));
        auto piv_inv = k.inv(m.at(row, col));
        for (std::size_t j = col; j < m.cols; ++j) m.at(row, j) = k.mul(piv_inv, m.at(row, j));
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == row || k.is_zero(m.at(i, col))) continue;
            auto factor = m.at(i, col);
            for (std::size_t j = col; j < m.cols; ++j)
                m.at(i, j) = k.sub(m.at(i, j), k.mul(factor, m.at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <FieldType F>
std::size_t rank(const F& k, Mat<F> m) {
    return rref(k, m).size();
}

template <FieldType F>
std::optional<Mat<F>> inverse(const F& k, const Mat<F>& m) {
    if (m.rows != m.cols) throw DimensionMismatch("inverse: square matrix required");
    std::size_t n = m.rows;
    Mat<F> aug(n, 2 * n, k.zero());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = k.one();
    }
    auto pivots = rref(k, aug);
    if (pivots.size() != n || pivots.back() != n - 1) return std::nullopt;
    Mat<F> inv(n, n, k.zero());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

template <FieldType F>
bool is_invertible(const F& k, const Mat<F>& m) {
    return m.rows == m.cols && rank(k, m) == m.rows;
}

/// Basis of { x : m x = 0 }, one column per free variable, in ascending
/// free-column order. The free coordinates of a kernel vector are exactly its
/// coefficients in this basis.
template <FieldType F>
Mat<F> kernel_basis(const F& k, Mat<F> m) {
    auto pivots = rref(k, m);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);

    Mat<F> basis(m.cols, free_cols.size(), k.zero());
    for (std::size_t b = 0; b < free_cols.size(); ++b) {
        std::size_t fc = free_cols[b];
        basis.at(fc, b) = k.one();
        for (std::size_t r = 0; r < pivots.size(); ++r)
            basis.at(pivots[r], b) = k.neg(m.at(r, fc));
    }
    return basis;
}

/// Solve m x = b. Returns (one particular solution, kernel basis of m), or
/// nullopt when inconsistent.
template <FieldType F>
std::optional<std::pair<Vec<F>, Mat<F>>> solve_affine(const F& k, const Mat<F>& m, const Vec<F>& b) {
    Mat<F> aug(m.rows, m.cols + 1, k.zero());
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = b[i];
    }
    auto pivots = rref(k, aug);
    if (!pivots.empty() && pivots.back() == m.cols) return std::nullopt;
    Vec<F> x(m.cols, k.zero());
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, m.cols);
    return std::make_pair(std::move(x), kernel_basis(k, m));
}

// --- finite-field enumeration helpers -------------------------------------

/// Advance a base-p odometer; returns false after wrapping back to all zeros.
inline bool next_tuple(std::uint64_t p, std::vector<std::uint64_t>& digits) {
    for (auto& d : digits) {
        if (++d < p) return true;
        d = 0;
    }
    return false;
}

/// Row-major base-p packing of a matrix into a single integer key.
inline std::uint64_t pack_mat(const PrimeField& k, const Mat<PrimeField>& m) {
    std::uint64_t code = 0;
    for (auto it = m.a.rbegin(); it != m.a.rend(); ++it) code = code * k.modulus() + *it;
    return code;
}

inline Mat<PrimeField> unpack_mat(const PrimeField& k, std::uint64_t code, std::size_t rows,
                                  std::size_t cols) {
    Mat<PrimeField> m(rows, cols, 0);
    for (auto& e : m.a) {
        e = code % k.modulus();
        code /= k.modulus();
    }
    return m;
}

/// Deterministic ordering: flatten row-major, compare lexicographically.
template <FieldType F>
bool mat_lex_less(const Mat<F>& x, const Mat<F>& y) {
    return x.a < y.a;
}

}  // namespace bernstein
