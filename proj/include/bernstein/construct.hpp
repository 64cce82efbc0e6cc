#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "bernstein/algebra.hpp"
#include "bernstein/bernop.hpp"
#include "bernstein/errors.hpp"
#include "bernstein/fields.hpp"
#include "bernstein/linalg.hpp"
#include "bernstein/morphism.hpp"

namespace bernstein {

/// Semidirect product of (V, *, Omega) with the field: the (n+1)-dimensional
/// baric algebra on basis {e_1..e_n, f} with
///   f o f = f,   e_i o e_j = e_i * e_j,   e_i o f = 1/2 Omega(e_i),
/// and weight (0, ..., 0, 1). The distinguished idempotent f is the LAST
/// basis vector. No conditions on (V, Omega) are imposed here: the result is
/// a Bernstein algebra precisely when V is a 4-algebra and Omega a Bernstein
/// operator on it.
template <FieldType F>
BaricAlgebra<F> semidirect(const Algebra<F>& v, const Mat<F>& om) {
    const F& k = v.field();
    std::size_t n = v.dim();
    if (om.rows != n || om.cols != n) throw DimensionMismatch("semidirect: operator size");

    std::vector<std::string> names = v.basis_names();
    names.push_back("f");
    Algebra<F> prod(k, n + 1, std::move(names));
    auto half = k.half();

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            auto pij = v.basis_product(i, j);
            Vec<F> ext(n + 1, k.zero());
            for (std::size_t t = 0; t < n; ++t) ext[t] = pij[t];
            prod.set_product(i, j, ext);
        }
    for (std::size_t i = 0; i < n; ++i) {
        Vec<F> half_om(n + 1, k.zero());
        for (std::size_t t = 0; t < n; ++t) half_om[t] = k.mul(half, om.at(t, i));
        prod.set_product(i, n, half_om);
    }
    Vec<F> ff(n + 1, k.zero());
    ff[n] = k.one();
    prod.set_product(n, n, ff);

    Vec<F> weight(n + 1, k.zero());
    weight[n] = k.one();
    return BaricAlgebra<F>(std::move(prod), std::move(weight));
}

/// Trivial Bernstein algebra B_0(V, Omega): the semidirect product over the
/// abelian multiplication. Omega = 0 gives the constant Bernstein algebra,
/// Omega = Id the unit Bernstein algebra.
template <FieldType F>
BaricAlgebra<F> trivial_bernstein(const F& k, std::size_t dim, const Mat<F>& om) {
    if (!is_idempotent(k, om)) throw NotIdempotent();
    return semidirect(Algebra<F>::abelian(k, dim), om);
}

/// Result of the structure-theorem decomposition of a Bernstein algebra B:
/// the kernel 4-algebra, the recovered operator, the idempotent e = x^2 used,
/// and the data identifying B with the semidirect product of the kernel.
template <FieldType F>
struct Decomposition {
    Algebra<F> kernel;     // Ker(omega) with the induced multiplication
    Mat<F> omega;          // x -> 2 e * x restricted to the kernel
    Vec<F> idempotent;     // e, in the coordinates of B
    Mat<F> kernel_basis;   // dim(B) x (dim(B)-1), column b = kernel basis vector
    MorphismWitness<F> iso;  // witness of semidirect(kernel, omega) ~ B in split coordinates
};

/// psi as a concrete matrix from semidirect(kernel, omega) to B:
/// columns are the kernel basis vectors followed by e.
template <FieldType F>
Mat<F> decomposition_iso_matrix(const F& k, const Decomposition<F>& d) {
    std::size_t nb = d.idempotent.size();
    Mat<F> m(nb, nb, k.zero());
    for (std::size_t j = 0; j + 1 < nb; ++j)
        for (std::size_t i = 0; i < nb; ++i) m.at(i, j) = d.kernel_basis.at(i, j);
    for (std::size_t i = 0; i < nb; ++i) m.at(i, nb - 1) = d.idempotent[i];
    return m;
}

/// Structure-theorem decomposition: pick the first basis vector of nonzero
/// weight, scale it to weight one, and set e := x^2. Then e is idempotent of
/// weight one, V := Ker(omega) carries the induced multiplication, and
/// Omega(x) := 2 e * x maps V to V. The kernel basis comes from the reduced
/// row echelon form of omega, free columns ascending, so kernel coordinates
/// can be read off the free entries.
template <FieldType F>
Decomposition<F> decompose(const BaricAlgebra<F>& b) {
    if (!check_bernstein(b)) throw NotBernstein();
    const F& k = b.field();
    std::size_t nb = b.dim();
    const auto& w = b.weight_vector();

    std::size_t pick = 0;
    while (k.is_zero(w[pick])) ++pick;  // omega != 0 by the baric invariant
    Vec<F> x(nb, k.zero());
    x[pick] = k.inv(w[pick]);
    Vec<F> e = b.algebra().square(x);

    Mat<F> wrow(1, nb, k.zero());
    for (std::size_t j = 0; j < nb; ++j) wrow.at(0, j) = w[j];
    Mat<F> kb = kernel_basis(k, wrow);  // nb x (nb - 1)
    std::size_t n = kb.cols;

    // free (non-pivot) columns of the weight row, in ascending order; the
    // kernel coordinates of a kernel vector are exactly these entries
    std::size_t pivot = 0;
    while (k.is_zero(w[pivot])) ++pivot;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < nb; ++c)
        if (c != pivot) free_cols.push_back(c);
    auto kernel_coords = [&](const Vec<F>& v) {
        Vec<F> c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = v[free_cols[i]];
        return c;
    };

    std::vector<std::string> names;
    for (auto c : free_cols) names.push_back(b.algebra().basis_names()[c]);
    Algebra<F> kern(k, n, std::move(names));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            kern.set_product(i, j, kernel_coords(b.algebra().mul(kb.col(i), kb.col(j))));

    auto two = k.add(k.one(), k.one());
    Mat<F> om(n, n, k.zero());
    for (std::size_t j = 0; j < n; ++j)
        om.set_col(j, kernel_coords(vec_scale(k, two, b.algebra().mul(e, kb.col(j)))));

    return Decomposition<F>{std::move(kern), std::move(om), std::move(e), std::move(kb),
                            MorphismWitness<F>::identity(k, n)};
}

/// Transport the algebra structure along an invertible change of basis T
/// (column j = new basis vector in old coordinates). The new weight is
/// omega o T, so weight-preserving changes (omega o T = omega) leave the
/// weight vector untouched.
template <FieldType F>
BaricAlgebra<F> apply_basis_change(const BaricAlgebra<F>& b, const Mat<F>& t) {
    const F& k = b.field();
    std::size_t n = b.dim();
    if (t.rows != n || t.cols != n) throw DimensionMismatch("apply_basis_change: matrix size");
    auto tinv = inverse(k, t);
    if (!tinv) throw InvalidInput("apply_basis_change: matrix is not invertible");

    Algebra<F> alg(k, n, b.algebra().basis_names());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            alg.set_product(i, j, mat_apply(k, *tinv, b.algebra().mul(t.col(i), t.col(j))));

    Vec<F> w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = dot(k, b.weight_vector(), t.col(j));
    return BaricAlgebra<F>(std::move(alg), std::move(w));
}

/// Whether the matrix T defines an isomorphism of baric algebras src -> dst:
/// invertible, multiplicative on basis pairs, and weight-compatible.
template <FieldType F>
bool is_baric_iso_matrix(const BaricAlgebra<F>& src, const BaricAlgebra<F>& dst, const Mat<F>& t) {
    const F& k = src.field();
    std::size_t n = src.dim();
    if (dst.dim() != n || t.rows != n || t.cols != n) return false;
    if (!is_invertible(k, t)) return false;
    for (std::size_t j = 0; j < n; ++j)
        if (!k.eq(dot(k, dst.weight_vector(), t.col(j)), src.weight_vector()[j])) return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            auto lhs = mat_apply(k, t, src.algebra().basis_product(i, j));
            auto rhs = dst.algebra().mul(t.col(i), t.col(j));
            if (!vec_eq(k, lhs, rhs)) return false;
        }
    return true;
}

}  // namespace bernstein
