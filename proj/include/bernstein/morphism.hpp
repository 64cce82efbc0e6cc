#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bernstein/algebra.hpp"
#include "bernstein/bernop.hpp"
#include "bernstein/errors.hpp"
#include "bernstein/fields.hpp"
#include "bernstein/linalg.hpp"
#include "bernstein/poly.hpp"

namespace bernstein {

/// A 4-algebra together with a Bernstein operator on it; the data from which
/// a semidirect product is built.
template <FieldType F>
struct BernsteinDatum {
    Algebra<F> algebra;
    Mat<F> omega;

    BernsteinDatum(Algebra<F> v, Mat<F> om, bool validate = true)
        : algebra(std::move(v)), omega(std::move(om)) {
        if (omega.rows != algebra.dim() || omega.cols != algebra.dim())
            throw DimensionMismatch("operator size != algebra dim");
        if (validate && !is_bernstein_operator(algebra, omega)) throw NotOperator();
    }
};

/// Morphism data (v0, f) between two semidirect products: f maps the source
/// kernel into the target kernel and v0 is the target-kernel part of the
/// image of the distinguished idempotent.
template <FieldType F>
struct MorphismWitness {
    Vec<F> v0;  // element of the target kernel
    Mat<F> f;   // target_dim x source_dim

    static MorphismWitness identity(const F& k, std::size_t n) {
        return MorphismWitness{zero_vec<F>(k, n), identity_mat<F>(k, n)};
    }
};

/// The three compatibility equations for (v0, f):
///   f(x * y) = f(x) *' f(y)
///   f(Omega(x)) - Omega'(f(x)) = 2 f(x) *' v0
///   Omega'(v0) = v0 - v0 *' v0
/// The first two are checked as polynomial identities in generic x, y.
template <FieldType F>
bool is_morphism_witness(const BernsteinDatum<F>& src, const BernsteinDatum<F>& dst,
                         const MorphismWitness<F>& w) {
    const F& k = src.algebra.field();
    require_same_field(k.spec(), dst.algebra.field().spec(), "is_morphism_witness");
    std::size_t n = src.algebra.dim(), m = dst.algebra.dim();
    if (w.f.rows != m || w.f.cols != n || w.v0.size() != m)
        throw DimensionMismatch("witness shape does not match (src, dst) dimensions");

    auto two = k.add(k.one(), k.one());
    std::size_t nv = 2 * n;
    auto x = src.algebra.generic_element(nv, 0);
    auto y = src.algebra.generic_element(nv, n);

    // Mor1
    auto lhs1 = mat_apply_poly(k, w.f, src.algebra.mul_poly(x, y));
    auto fx = mat_apply_poly(k, w.f, x);
    auto fy = mat_apply_poly(k, w.f, y);
    auto rhs1 = dst.algebra.mul_poly(fx, fy);
    if (!polyvec_is_zero(polyvec_sub(lhs1, rhs1))) return false;

    // Mor2
    PolyVec<F> v0_const;
    for (std::size_t t = 0; t < m; ++t)
        v0_const.push_back(Poly<F>::constant(k, nv, w.v0[t]));
    auto lhs2 = polyvec_sub(mat_apply_poly(k, w.f, mat_apply_poly(k, src.omega, x)),
                            mat_apply_poly(k, dst.omega, fx));
    auto rhs2 = dst.algebra.mul_poly(fx, v0_const);
    for (std::size_t t = 0; t < m; ++t)
        if (!(lhs2[t] - rhs2[t].scaled(two)).is_zero()) return false;

    // Mor3
    auto lhs3 = mat_apply(k, dst.omega, w.v0);
    auto rhs3 = vec_sub(k, w.v0, dst.algebra.mul(w.v0, w.v0));
    return vec_eq(k, lhs3, rhs3);
}

/// psi(x, alpha) = (f(x) + alpha v0, alpha).
template <FieldType F>
std::pair<Vec<F>, typename F::Elem> apply_witness(const F& k, const MorphismWitness<F>& w,
                                                  const Vec<F>& x, const typename F::Elem& alpha) {
    return {vec_add(k, mat_apply(k, w.f, x), vec_scale(k, alpha, w.v0)), alpha};
}

/// Inverse witness (-f^{-1}(v0), f^{-1}); requires f invertible.
template <FieldType F>
MorphismWitness<F> witness_inverse(const F& k, const MorphismWitness<F>& w) {
    auto finv = inverse(k, w.f);
    if (!finv) throw InvalidInput("witness_inverse: f is not invertible");
    Vec<F> v = mat_apply(k, *finv, w.v0);
    for (auto& c : v) c = k.neg(c);
    return MorphismWitness<F>{std::move(v), std::move(*finv)};
}

/// Enumerate algebra homomorphisms f : (V, *) -> (W, *') over GF(p), column
/// by column with early rejection on every multiplicativity condition whose
/// columns are all chosen. Optionally restricted to invertible maps. The
/// sink returns false to stop the enumeration early.
template <FieldType F, typename Sink>
void for_each_algebra_map(const Algebra<F>& src, const Algebra<F>& dst, bool invertible_only,
                          std::uint64_t budget, Sink&& sink) {
    if constexpr (!FiniteFieldType<F>) {
        (void)src; (void)dst; (void)invertible_only; (void)budget; (void)sink;
        throw UnsupportedField("algebra-map enumeration requires GF(p)");
    } else {
        const F& k = src.field();
        require_same_field(k.spec(), dst.field().spec(), "for_each_algebra_map");
        std::size_t n = src.dim(), m = dst.dim();
        std::uint64_t p = k.size();

        std::vector<std::vector<Vec<F>>> sprod(n, std::vector<Vec<F>>(n));
        std::vector<std::vector<std::size_t>> smax(n, std::vector<std::size_t>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                sprod[i][j] = src.basis_product(i, j);
                for (std::size_t t = 0; t < n; ++t)
                    if (!k.is_zero(sprod[i][j][t])) smax[i][j] = t;
            }

        Mat<F> f(m, n, k.zero());
        std::uint64_t spent = 0;

        auto prune_ok = [&](std::size_t j) {
            for (std::size_t a = 0; a <= j; ++a)
                for (std::size_t b = a; b <= j; ++b) {
                    if (std::max({a, b, smax[a][b]}) != j) continue;
                    auto lhs = mat_apply(k, f, sprod[a][b]);
                    auto rhs = dst.mul(f.col(a), f.col(b));
                    if (!vec_eq(k, lhs, rhs)) return false;
                }
            return true;
        };

        auto rec = [&](auto&& self, std::size_t j) -> bool {
            if (j == n) {
                if (!invertible_only || is_invertible(k, f)) return sink(std::as_const(f));
                return true;
            }
            std::vector<std::uint64_t> digits(m, 0);
            bool keep_going = true;
            do {
                if (++spent > budget)
                    throw BudgetExceeded("algebra-map enumeration: budget of " +
                                         std::to_string(budget) + " candidate columns exhausted");
                f.set_col(j, Vec<F>(digits.begin(), digits.end()));
                if (prune_ok(j)) keep_going = self(self, j + 1);
            } while (keep_going && next_tuple(p, digits));
            f.set_col(j, Vec<F>(m, k.zero()));
            return keep_going;
        };
        if (n == 0) {
            if (!invertible_only || m == 0) sink(std::as_const(f));
            return;
        }
        rec(rec, 0);
    }
}

/// Complete list of morphism witnesses between two data over GF(p), in
/// lexicographic (f, v0) order. For each multiplicative f the second equation
/// is a linear system in v0; its solution space is enumerated and screened by
/// the third equation.
template <FieldType F>
std::vector<MorphismWitness<F>> enumerate_morphisms(const BernsteinDatum<F>& src,
                                                    const BernsteinDatum<F>& dst,
                                                    std::uint64_t budget = kDefaultBudget) {
    if constexpr (!FiniteFieldType<F>) {
        (void)src; (void)dst; (void)budget;
        throw UnsupportedField("enumerate_morphisms requires GF(p); over Q only witness "
                               "verification is supported");
    } else {
        const F& k = src.algebra.field();
        std::size_t n = src.algebra.dim(), m = dst.algebra.dim();
        auto two = k.add(k.one(), k.one());
        std::vector<MorphismWitness<F>> out;

        for_each_algebra_map(src.algebra, dst.algebra, false, budget, [&](const Mat<F>& f) {
            // stack the n systems   2 L'_{f(e_i)} v0 = f(Omega e_i) - Omega'(f(e_i))
            Mat<F> sys(n * m, m, k.zero());
            Vec<F> rhs(n * m, k.zero());
            for (std::size_t i = 0; i < n; ++i) {
                auto fei = f.col(i);
                auto lm = dst.algebra.left_mul_matrix(fei);
                auto target = vec_sub(k, mat_apply(k, f, src.omega.col(i)),
                                      mat_apply(k, dst.omega, fei));
                for (std::size_t r = 0; r < m; ++r) {
                    for (std::size_t c = 0; c < m; ++c)
                        sys.at(i * m + r, c) = k.mul(two, lm.at(r, c));
                    rhs[i * m + r] = target[r];
                }
            }
            auto sol = solve_affine(k, sys, rhs);
            if (!sol) return true;
            const auto& [particular, kern] = *sol;
            std::vector<std::uint64_t> digits(kern.cols, 0);
            do {
                Vec<F> v0 = particular;
                for (std::size_t c = 0; c < kern.cols; ++c)
                    if (digits[c])
                        v0 = vec_add(k, v0, vec_scale(k, digits[c], kern.col(c)));
                auto lhs3 = mat_apply(k, dst.omega, v0);
                auto rhs3 = vec_sub(k, v0, dst.algebra.mul(v0, v0));
                if (vec_eq(k, lhs3, rhs3)) out.push_back(MorphismWitness<F>{v0, f});
            } while (next_tuple(k.size(), digits));
            return true;
        });

        std::sort(out.begin(), out.end(), [](const MorphismWitness<F>& a, const MorphismWitness<F>& b) {
            if (a.f.a != b.f.a) return a.f.a < b.f.a;
            return a.v0 < b.v0;
        });
        return out;
    }
}

}  // namespace bernstein
