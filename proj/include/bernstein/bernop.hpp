#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "bernstein/algebra.hpp"
#include "bernstein/errors.hpp"
#include "bernstein/fields.hpp"
#include "bernstein/linalg.hpp"
#include "bernstein/poly.hpp"

namespace bernstein {

template <FieldType F>
bool is_idempotent(const F& k, const Mat<F>& m) {
    return m.rows == m.cols && mat_eq(k, mat_mul(k, m, m), m);
}

namespace detail {

/// Coefficient conditions of the quadratic identity
/// Omega(x)^2 + Omega(x^2) = x^2, one per unordered basis pair.
template <FieldType F>
bool bo_quadratic_conditions(const Algebra<F>& v, const Mat<F>& om) {
    const F& k = v.field();
    std::size_t n = v.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            auto prod = v.basis_product(i, j);
            auto lhs = vec_add(k, v.mul(om.col(i), om.col(j)), mat_apply(k, om, prod));
            if (!vec_eq(k, lhs, prod)) return false;
        }
    return true;
}

/// Coefficient conditions of the cubic identity x^2 * Omega(x) = 0, one per
/// basis multiset {a <= b <= c}; the factor 2 on mixed terms is dropped
/// (char != 2).
template <FieldType F>
bool bo_cubic_conditions(const Algebra<F>& v, const Mat<F>& om) {
    const F& k = v.field();
    std::size_t n = v.dim();
    auto two = k.add(k.one(), k.one());
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b)
            for (std::size_t c = b; c < n; ++c) {
                Vec<F> s;
                if (a == b && b == c) {
                    s = v.mul(v.basis_product(a, a), om.col(a));
                } else if (a == b) {
                    s = vec_add(k, v.mul(v.basis_product(a, a), om.col(c)),
                                vec_scale(k, two, v.mul(v.basis_product(a, c), om.col(a))));
                } else if (b == c) {
                    s = vec_add(k, v.mul(v.basis_product(b, b), om.col(a)),
                                vec_scale(k, two, v.mul(v.basis_product(a, b), om.col(b))));
                } else {
                    s = vec_add(k, v.mul(v.basis_product(a, b), om.col(c)),
                                vec_add(k, v.mul(v.basis_product(a, c), om.col(b)),
                                        v.mul(v.basis_product(b, c), om.col(a))));
                }
                if (!vec_is_zero(k, s)) return false;
            }
    return true;
}

template <FieldType F>
bool fast_is_bernstein_operator(const Algebra<F>& v, const Mat<F>& om) {
    return is_idempotent(v.field(), om) && bo_quadratic_conditions(v, om) &&
           bo_cubic_conditions(v, om);
}

template <FieldType F>
bool fast_is_normal_bernstein_operator(const Algebra<F>& v, const Mat<F>& om) {
    const F& k = v.field();
    std::size_t n = v.dim();
    if (!is_idempotent(k, om)) return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            // Omega(x) * y = x * y is not symmetric in (x, y): all ordered
            // pairs are needed
            if (!vec_eq(k, v.mul(om.col(i), v.basis_vec(j)), v.basis_product(i, j))) return false;
            if (j >= i && !vec_is_zero(k, mat_apply(k, om, v.basis_product(i, j)))) return false;
        }
    return true;
}

}  // namespace detail

/// Bernstein operator test in the squared form of its definition:
/// Omega = Omega^2, x^2 * Omega(x) = 0 and Omega(x)^2 + Omega(x^2) = x^2,
/// the latter two as polynomial identities in the coordinates of x.
template <FieldType F>
bool is_bernstein_operator(const Algebra<F>& v, const Mat<F>& om) {
    const F& k = v.field();
    std::size_t n = v.dim();
    if (om.rows != n || om.cols != n) throw DimensionMismatch("operator size != algebra dim");
    if (!check_4algebra(v)) throw Not4Algebra();
    if (!is_idempotent(k, om)) return false;
    auto x = v.generic_element(n, 0);
    auto omx = mat_apply_poly(k, om, x);
    auto sq = v.mul_poly(x, x);
    if (!polyvec_is_zero(v.mul_poly(sq, omx))) return false;
    auto lhs = v.mul_poly(omx, omx);
    auto omsq = mat_apply_poly(k, om, sq);
    for (std::size_t t = 0; t < n; ++t)
        if (!((lhs[t] + omsq[t]) - sq[t]).is_zero()) return false;
    return true;
}

/// Same predicate through the linearized form
/// Omega(x) * Omega(y) + Omega(x * y) = x * y plus the cubic condition,
/// evaluated coefficient-wise on basis pairs and multisets. Equivalent to
/// is_bernstein_operator over any field of characteristic != 2.
template <FieldType F>
bool is_bernstein_operator_linearized(const Algebra<F>& v, const Mat<F>& om) {
    if (om.rows != v.dim() || om.cols != v.dim())
        throw DimensionMismatch("operator size != algebra dim");
    if (!check_4algebra(v)) throw Not4Algebra();
    return detail::fast_is_bernstein_operator(v, om);
}

/// Normal Bernstein operator: Omega = Omega^2, Omega(x^2) = 0 and
/// Omega(x) * y = x * y; both identities are (bi)linear so the basis
/// evaluations are exactly the polynomial coefficients.
template <FieldType F>
bool is_normal_bernstein_operator(const Algebra<F>& v, const Mat<F>& om) {
    if (om.rows != v.dim() || om.cols != v.dim())
        throw DimensionMismatch("operator size != algebra dim");
    if (!check_4algebra(v)) throw Not4Algebra();
    return detail::fast_is_normal_bernstein_operator(v, om);
}

enum class OperatorKind { Bernstein, Normal };

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

/// Exhaustive list of (normal) Bernstein operators on a 4-algebra over GF(p),
/// in lexicographic row-major order. The search walks the matrix column by
/// column and discards a partial assignment as soon as one of the linear or
/// bilinear coefficient conditions involving only chosen columns fails; the
/// cubic conditions are evaluated on the surviving full matrices.
///
/// `budget` bounds the number of candidate columns explored; exceeding it
/// throws BudgetExceeded and yields nothing.
template <FieldType F>
std::vector<Mat<F>> enumerate_operators(const Algebra<F>& v, OperatorKind mode,
                                        std::uint64_t budget = kDefaultBudget) {
    if constexpr (!FiniteFieldType<F>) {
        (void)v; (void)mode; (void)budget;
        throw UnsupportedField("enumerate_operators requires GF(p); over Q only verification of "
                               "given operators is supported");
    } else {
        const F& k = v.field();
        if (!check_4algebra(v)) throw Not4Algebra();
        std::size_t n = v.dim();
        std::uint64_t p = k.size();

        // basis products and their supports, fixed for the whole search
        std::vector<std::vector<Vec<F>>> prod(n, std::vector<Vec<F>>(n));
        std::vector<std::vector<std::vector<std::size_t>>> support(
            n, std::vector<std::vector<std::size_t>>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                prod[i][j] = v.basis_product(i, j);
                for (std::size_t t = 0; t < n; ++t)
                    if (!k.is_zero(prod[i][j][t])) support[i][j].push_back(t);
            }

        Mat<F> om(n, n, k.zero());
        std::vector<Mat<F>> out;
        std::uint64_t spent = 0;

        // largest column index needed to evaluate Om on vector w
        auto max_needed = [&](const Vec<F>& w, std::size_t base) {
            std::size_t m = base;
            for (std::size_t t = 0; t < n; ++t)
                if (!k.is_zero(w[t]) && t > m) m = t;
            return m;
        };

        auto prune_ok = [&](std::size_t j) {
            // conditions that become fully determined once column j is set
            if (mode == OperatorKind::Normal) {
                auto omj = om.col(j);
                for (std::size_t i = 0; i < n; ++i)
                    if (!vec_eq(k, v.mul(omj, v.basis_vec(i)), prod[j][i])) return false;
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t b = a; b < n; ++b)
                        if (!support[a][b].empty() && max_needed(prod[a][b], 0) == j)
                            if (!vec_is_zero(k, mat_apply(k, om, prod[a][b]))) return false;
            } else {
                for (std::size_t a = 0; a <= j; ++a)
                    for (std::size_t b = a; b <= j; ++b) {
                        if (std::max({a, b, max_needed(prod[a][b], 0)}) != j) continue;
                        auto lhs = vec_add(k, v.mul(om.col(a), om.col(b)),
                                           mat_apply(k, om, prod[a][b]));
                        if (!vec_eq(k, lhs, prod[a][b])) return false;
                    }
            }
            // idempotency on columns whose image support is already available
            for (std::size_t c = 0; c <= j; ++c) {
                auto omc = om.col(c);
                if (std::max(c, max_needed(omc, 0)) != j) continue;
                if (!vec_eq(k, mat_apply(k, om, omc), omc)) return false;
            }
            return true;
        };

        auto rec = [&](auto&& self, std::size_t j) -> void {
            if (j == n) {
                bool ok = mode == OperatorKind::Normal
                              ? detail::fast_is_normal_bernstein_operator(v, om)
                              : detail::fast_is_bernstein_operator(v, om);
                if (ok) out.push_back(om);
                return;
            }
            std::vector<std::uint64_t> digits(n, 0);
            do {
                if (++spent > budget)
                    throw BudgetExceeded("enumerate_operators: budget of " +
                                         std::to_string(budget) + " candidate columns exhausted");
                Vec<F> colv(digits.begin(), digits.end());
                om.set_col(j, colv);
                if (prune_ok(j)) self(self, j + 1);
            } while (next_tuple(p, digits));
            om.set_col(j, Vec<F>(n, k.zero()));
        };
        if (n == 0) {
            out.push_back(om);
            return out;
        }
        rec(rec, 0);
        std::sort(out.begin(), out.end(), mat_lex_less<F>);
        return out;
    }
}

}  // namespace bernstein
