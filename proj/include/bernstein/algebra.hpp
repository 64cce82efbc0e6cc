#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "bernstein/errors.hpp"
#include "bernstein/fields.hpp"
#include "bernstein/linalg.hpp"
#include "bernstein/poly.hpp"

namespace bernstein {

inline constexpr std::size_t kMaxDim = 16;

/// Finite-dimensional commutative algebra given by its structure constants:
/// e_i * e_j = sum_k c[i][j][k] e_k. Symmetry c[i][j][k] == c[j][i][k] is
/// enforced structurally: products are only ever set for i <= j and mirrored.
template <FieldType F>
class Algebra {
public:
    using Elem = typename F::Elem;

    Algebra(const F& k, std::size_t dim, std::vector<std::string> basis_names = {})
        : k_(k), dim_(dim), names_(std::move(basis_names)), sc_(dim * dim * dim, k.zero()) {
        if (dim > kMaxDim)
            throw InvalidInput("algebra dimension " + std::to_string(dim) + " exceeds limit " +
                               std::to_string(kMaxDim));
        if (names_.empty())
            for (std::size_t i = 0; i < dim_; ++i) names_.push_back("e" + std::to_string(i + 1));
        if (names_.size() != dim_) throw InvalidInput("basis name count does not match dimension");
    }

    static Algebra abelian(const F& k, std::size_t dim) { return Algebra(k, dim); }

    const F& field() const { return k_; }
    std::size_t dim() const { return dim_; }
    const std::vector<std::string>& basis_names() const { return names_; }

    const Elem& sc(std::size_t i, std::size_t j, std::size_t t) const {
        return sc_[(i * dim_ + j) * dim_ + t];
    }

    /// Set the t-coordinate of e_i * e_j (and of e_j * e_i), requires i <= j.
    void set_product_coord(std::size_t i, std::size_t j, std::size_t t, const Elem& v) {
        if (i > j)
            throw InvalidInput("structure constant given with i > j; specify i <= j entries only");
        if (j >= dim_ || t >= dim_) throw DimensionMismatch("structure constant index out of range");
        sc_[(i * dim_ + j) * dim_ + t] = v;
        sc_[(j * dim_ + i) * dim_ + t] = v;
    }

    void set_product(std::size_t i, std::size_t j, const Vec<F>& v) {
        for (std::size_t t = 0; t < dim_; ++t) set_product_coord(i, j, t, v[t]);
    }

    Vec<F> basis_product(std::size_t i, std::size_t j) const {
        Vec<F> v(dim_);
        for (std::size_t t = 0; t < dim_; ++t) v[t] = sc(i, j, t);
        return v;
    }

    Vec<F> basis_vec(std::size_t i) const {
        Vec<F> e(dim_, k_.zero());
        e[i] = k_.one();
        return e;
    }

    Vec<F> mul(const Vec<F>& x, const Vec<F>& y) const {
        if (x.size() != dim_ || y.size() != dim_) throw DimensionMismatch("Algebra::mul: vector size");
        Vec<F> z(dim_, k_.zero());
        for (std::size_t i = 0; i < dim_; ++i) {
            if (k_.is_zero(x[i])) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                if (k_.is_zero(y[j])) continue;
                auto xy = k_.mul(x[i], y[j]);
                for (std::size_t t = 0; t < dim_; ++t)
                    z[t] = k_.add(z[t], k_.mul(xy, sc(i, j, t)));
            }
        }
        return z;
    }

    Vec<F> square(const Vec<F>& x) const { return mul(x, x); }

    bool is_abelian() const {
        for (const auto& c : sc_)
            if (!k_.is_zero(c)) return false;
        return true;
    }

    /// Left-multiplication operator L_v : x -> v * x as a matrix.
    Mat<F> left_mul_matrix(const Vec<F>& v) const {
        Mat<F> m(dim_, dim_, k_.zero());
        for (std::size_t j = 0; j < dim_; ++j) {
            Vec<F> ej(dim_, k_.zero());
            ej[j] = k_.one();
            m.set_col(j, mul(v, ej));
        }
        return m;
    }

    /// Generic element whose coordinates are the formal variables
    /// var_offset .. var_offset + dim - 1 out of nvars.
    PolyVec<F> generic_element(std::size_t nvars, std::size_t var_offset) const {
        PolyVec<F> x;
        x.reserve(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            x.push_back(Poly<F>::variable(k_, nvars, var_offset + i));
        return x;
    }

    /// Bilinear extension of the multiplication to polynomial coordinates.
    PolyVec<F> mul_poly(const PolyVec<F>& x, const PolyVec<F>& y) const {
        if (x.size() != dim_ || y.size() != dim_)
            throw DimensionMismatch("Algebra::mul_poly: vector size");
        std::size_t nv = dim_ ? x[0].nvars() : 0;
        PolyVec<F> z(dim_, Poly<F>(k_, nv));
        for (std::size_t i = 0; i < dim_; ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                if (y[j].is_zero()) continue;
                auto xy = x[i] * y[j];
                for (std::size_t t = 0; t < dim_; ++t) {
                    if (k_.is_zero(sc(i, j, t))) continue;
                    z[t] = z[t] + xy.scaled(sc(i, j, t));
                }
            }
        }
        return z;
    }

    /// Coordinates of x^2 for a generic x, as polynomials in dim variables.
    PolyVec<F> square_expansion() const {
        auto x = generic_element(dim_, 0);
        return mul_poly(x, x);
    }

private:
    F k_;
    std::size_t dim_;
    std::vector<std::string> names_;
    std::vector<Elem> sc_;  // (i * dim + j) * dim + t
};

/// (x^2)^2 = 0 as a polynomial identity in the coordinates of x.
template <FieldType F>
bool check_4algebra(const Algebra<F>& a) {
    auto sq = a.square_expansion();
    return polyvec_is_zero(a.mul_poly(sq, sq));
}

/// Commutative algebra with a weight: a nonzero functional that is an algebra
/// morphism onto the field. Both conditions are validated at construction.
template <FieldType F>
class BaricAlgebra {
public:
    using Elem = typename F::Elem;

    BaricAlgebra(Algebra<F> alg, Vec<F> weight) : alg_(std::move(alg)), weight_(std::move(weight)) {
        const F& k = alg_.field();
        if (weight_.size() != alg_.dim()) throw DimensionMismatch("weight length != dimension");
        if (vec_is_zero(k, weight_)) throw InvalidInput("weight must be a non-zero functional");
        for (std::size_t i = 0; i < alg_.dim(); ++i)
            for (std::size_t j = i; j < alg_.dim(); ++j) {
                auto lhs = dot(k, weight_, alg_.basis_product(i, j));
                auto rhs = k.mul(weight_[i], weight_[j]);
                if (!k.eq(lhs, rhs))
                    throw InvalidInput("weight is not an algebra morphism at basis pair (" +
                                       std::to_string(i) + "," + std::to_string(j) + ")");
            }
    }

    const Algebra<F>& algebra() const { return alg_; }
    const F& field() const { return alg_.field(); }
    std::size_t dim() const { return alg_.dim(); }
    const Vec<F>& weight_vector() const { return weight_; }

    Elem weight_of(const Vec<F>& x) const { return dot(field(), weight_, x); }

    /// omega(x) for a generic x, as a linear polynomial.
    Poly<F> weight_poly(std::size_t nvars, std::size_t var_offset) const {
        const F& k = field();
        Poly<F> w(k, nvars);
        for (std::size_t i = 0; i < dim(); ++i)
            w = w + Poly<F>::variable(k, nvars, var_offset + i).scaled(weight_[i]);
        return w;
    }

private:
    Algebra<F> alg_;
    Vec<F> weight_;
};

/// Bernstein identity (a^2)^2 = omega(a)^2 a^2, checked coefficient-wise.
template <FieldType F>
bool check_bernstein(const BaricAlgebra<F>& b) {
    const auto& a = b.algebra();
    std::size_t n = a.dim();
    auto x = a.generic_element(n, 0);
    auto sq = a.mul_poly(x, x);
    auto lhs = a.mul_poly(sq, sq);
    auto w = b.weight_poly(n, 0);
    auto w2 = w * w;
    for (std::size_t t = 0; t < n; ++t)
        if (!(lhs[t] - w2 * sq[t]).is_zero()) return false;
    return true;
}

/// Normal Bernstein identity a^2 * b = omega(a) a * b, in 2n variables.
template <FieldType F>
bool check_normal_bernstein(const BaricAlgebra<F>& b) {
    const auto& a = b.algebra();
    std::size_t n = a.dim();
    auto x = a.generic_element(2 * n, 0);
    auto y = a.generic_element(2 * n, n);
    auto sq = a.mul_poly(x, x);
    auto lhs = a.mul_poly(sq, y);
    auto w = b.weight_poly(2 * n, 0);
    auto xy = a.mul_poly(x, y);
    for (std::size_t t = 0; t < n; ++t)
        if (!(lhs[t] - w * xy[t]).is_zero()) return false;
    return true;
}

namespace detail {

/// Check the morphism equations omega(e_i e_j) = omega_i omega_j for a
/// candidate functional; nonzero is required separately.
template <FieldType F>
bool is_weight_candidate(const Algebra<F>& a, const Vec<F>& w) {
    const F& k = a.field();
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i; j < a.dim(); ++j)
            if (!k.eq(dot(k, w, a.basis_product(i, j)), k.mul(w[i], w[j]))) return false;
    return true;
}

/// All rational roots of the characteristic polynomial of m, candidates for
/// an eigenvalue. Uses the classical p/q divisor test after clearing
/// denominators.
inline std::vector<BigRat> rational_eigenvalues(const Rationals& k, const Mat<Rationals>& m) {
    std::size_t n = m.rows;
    // char poly det(tI - m) by cofactor expansion over Poly in one variable.
    Poly<Rationals> t = Poly<Rationals>::variable(k, 1, 0);
    std::vector<std::vector<Poly<Rationals>>> cells(n, std::vector<Poly<Rationals>>(n, Poly<Rationals>(k, 1)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Poly<Rationals> c = Poly<Rationals>::constant(k, 1, k.neg(m.at(i, j)));
            if (i == j) c = c + t;
            cells[i][j] = c;
        }
    // permanent-style recursive determinant; n <= 4 so this is tiny.
    std::vector<std::size_t> cols(n);
    for (std::size_t i = 0; i < n; ++i) cols[i] = i;
    auto det = [&](auto&& self, std::vector<std::size_t> rows, std::vector<std::size_t> cs)
        -> Poly<Rationals> {
        if (rows.empty()) return Poly<Rationals>::constant(k, 1, k.one());
        Poly<Rationals> acc(k, 1);
        bool neg = false;
        for (std::size_t idx = 0; idx < cs.size(); ++idx) {
            std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
            std::vector<std::size_t> sub_cols;
            for (std::size_t q = 0; q < cs.size(); ++q)
                if (q != idx) sub_cols.push_back(cs[q]);
            auto term = cells[rows[0]][cs[idx]] * self(self, sub_rows, sub_cols);
            acc = neg ? acc - term : acc + term;
            neg = !neg;
        }
        return acc;
    };
    std::vector<std::size_t> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = i;
    auto cp = det(det, rows, cols);

    // coefficients c_0..c_n as rationals
    std::vector<BigRat> coeff(n + 1, BigRat(0));
    for (const auto& [mono, c] : cp.terms()) coeff[mono[0]] = c;

    // clear denominators -> integer polynomial
    BigInt lcm_den = 1;
    for (const auto& c : coeff) {
        BigInt d = denominator(c);
        lcm_den = lcm_den / gcd(lcm_den, d) * d;
    }
    std::vector<BigInt> ic(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        ic[i] = numerator(coeff[i]) * (lcm_den / denominator(coeff[i]));

    std::vector<BigRat> roots;
    auto eval_zero = [&](const BigRat& r) {
        BigRat acc(0), pw(1);
        for (std::size_t i = 0; i <= n; ++i) {
            acc += BigRat(ic[i]) * pw;
            pw *= r;
        }
        return acc == 0;
    };
    // strip trailing zero constant terms: 0 is a root
    std::size_t low = 0;
    while (low <= n && ic[low] == 0) ++low;
    if (low > 0) roots.push_back(BigRat(0));
    if (low > n) return roots;

    BigInt a0 = abs(ic[low]), an = abs(ic[n]);
    auto divisors = [](BigInt v) {
        std::vector<BigInt> ds;
        for (BigInt d = 1; d * d <= v; ++d)
            if (v % d == 0) {
                ds.push_back(d);
                if (d * d != v) ds.push_back(v / d);
            }
        return ds;
    };
    for (const auto& num : divisors(a0))
        for (const auto& den : divisors(an)) {
            BigRat cand(num, den);
            if (eval_zero(cand) && std::find(roots.begin(), roots.end(), cand) == roots.end())
                roots.push_back(cand);
            BigRat niand = -cand;
            if (eval_zero(niand) && std::find(roots.begin(), roots.end(), niand) == roots.end())
                roots.push_back(niand);
        }
    return roots;
}

}  // namespace detail

/// All nonzero algebra morphisms omega : A -> k, as weight vectors.
///
/// GF(p): exhaustive over the p^n functionals. Q: each omega(e_i) is a
/// rational eigenvalue of the left-multiplication operator of e_i, so the
/// finite candidate product is screened against the full quadratic system
/// (supported for dim <= 4).
template <FieldType F>
std::vector<Vec<F>> find_weights(const Algebra<F>& a) {
    const F& k = a.field();
    std::size_t n = a.dim();
    std::vector<Vec<F>> found;

    if constexpr (FiniteFieldType<F>) {
        double space = 1;
        for (std::size_t i = 0; i < n; ++i) space *= static_cast<double>(k.size());
        if (space > 1e8)
            throw BudgetExceeded("find_weights: functional space of size p^" + std::to_string(n) +
                                 " is too large to enumerate");
        std::vector<std::uint64_t> digits(n, 0);
        do {
            Vec<F> w(digits.begin(), digits.end());
            if (!vec_is_zero(k, w) && detail::is_weight_candidate(a, w)) found.push_back(w);
        } while (next_tuple(k.size(), digits));
        return found;
    } else {
        if (n > 4)
            throw UnsupportedField(
                "find_weights over Q is supported for dim <= 4; use a GF(p) oracle field");
        std::vector<std::vector<BigRat>> candidates;
        for (std::size_t i = 0; i < n; ++i) {
            Vec<F> ei(n, k.zero());
            ei[i] = k.one();
            candidates.push_back(detail::rational_eigenvalues(k, a.left_mul_matrix(ei)));
        }
        Vec<F> w(n, k.zero());
        auto rec = [&](auto&& self, std::size_t i) -> void {
            if (i == n) {
                if (!vec_is_zero(k, w) && detail::is_weight_candidate(a, w)) found.push_back(w);
                return;
            }
            for (const auto& c : candidates[i]) {
                w[i] = c;
                self(self, i + 1);
            }
        };
        rec(rec, 0);
        return found;
    }
}

/// Derived series dimensions: A(0) = A, A(k+1) = span(A(k) * A(k)), reported
/// until it stabilizes. Solvable iff the last entry is 0.
template <FieldType F>
std::vector<std::size_t> derived_series_dims(const Algebra<F>& a) {
    const F& k = a.field();
    std::size_t n = a.dim();
    std::vector<std::size_t> dims{n};

    // current subspace as a list of basis vectors (columns)
    std::vector<Vec<F>> basis;
    for (std::size_t i = 0; i < n; ++i) {
        Vec<F> e(n, k.zero());
        e[i] = k.one();
        basis.push_back(e);
    }
    while (dims.back() != 0) {
        Mat<F> products(basis.size() * (basis.size() + 1) / 2, n, k.zero());
        std::size_t r = 0;
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = i; j < basis.size(); ++j) {
                auto prod = a.mul(basis[i], basis[j]);
                for (std::size_t t = 0; t < n; ++t) products.at(r, t) = prod[t];
                ++r;
            }
        auto pivots = rref(k, products);
        std::vector<Vec<F>> next;
        for (std::size_t row = 0; row < pivots.size(); ++row) {
            Vec<F> v(n);
            for (std::size_t t = 0; t < n; ++t) v[t] = products.at(row, t);
            next.push_back(v);
        }
        if (next.size() == basis.size()) {  // stabilized without reaching zero
            dims.push_back(next.size());
            break;
        }
        dims.push_back(next.size());
        basis = std::move(next);
    }
    return dims;
}

template <FieldType F>
bool is_solvable(const Algebra<F>& a) {
    return derived_series_dims(a).back() == 0;
}

}  // namespace bernstein
