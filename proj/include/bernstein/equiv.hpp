#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bernstein/algebra.hpp"
#include "bernstein/bernop.hpp"
#include "bernstein/construct.hpp"
#include "bernstein/errors.hpp"
#include "bernstein/fields.hpp"
#include "bernstein/linalg.hpp"
#include "bernstein/morphism.hpp"

namespace bernstein {

/// All algebra automorphisms of (V, *) over GF(p), lexicographic order.
template <FieldType F>
std::vector<Mat<F>> algebra_automorphisms(const Algebra<F>& v,
                                          std::uint64_t budget = kDefaultBudget) {
    std::vector<Mat<F>> out;
    for_each_algebra_map(v, v, true, budget, [&](const Mat<F>& f) {
        out.push_back(f);
        return true;
    });
    std::sort(out.begin(), out.end(), mat_lex_less<F>);
    return out;
}

template <FieldType F>
struct EquivalenceClass {
    Mat<F> representative;                         // lexicographically least member
    std::vector<Mat<F>> members;                   // lexicographic order
    std::vector<MorphismWitness<F>> witnesses;     // witnesses[i] realizes rep -> members[i]
};

/// Search context for the operator-equivalence relation on a fixed 4-algebra
/// over GF(p):
///   Omega' = f Omega f^{-1} - 2 L_{v0},   Omega'(v0) = v0 - v0^2,
/// with f an algebra automorphism. The automorphism group is enumerated once
/// (packed, with inverses); the v0 candidates are bucketed by their
/// left-multiplication matrix, since v0 enters the first equation only
/// through L_{v0}.
template <FiniteFieldType F>
class OperatorEquivalence {
public:
    explicit OperatorEquivalence(const Algebra<F>& v, std::uint64_t budget = kDefaultBudget)
        : v_(v), k_(v.field()) {
        if (!check_4algebra(v_)) throw Not4Algebra();
        std::size_t n = v_.dim();
        for_each_algebra_map(v_, v_, true, budget, [&](const Mat<F>& f) {
            auto finv = inverse(k_, f);
            aut_codes_.emplace_back(pack_mat(k_, f), pack_mat(k_, *finv));
            return true;
        });
        std::sort(aut_codes_.begin(), aut_codes_.end());

        std::map<std::uint64_t, std::vector<Vec<F>>> buckets;
        std::vector<std::uint64_t> digits(n, 0);
        do {
            Vec<F> v0(digits.begin(), digits.end());
            buckets[pack_mat(k_, v_.left_mul_matrix(v0))].push_back(v0);
        } while (next_tuple(k_.size(), digits));
        for (auto& [code, v0s] : buckets)
            lbuckets_.emplace_back(unpack_mat(k_, code, n, n), std::move(v0s));
    }

    const Algebra<F>& algebra() const { return v_; }
    std::size_t aut_order() const { return aut_codes_.size(); }

    std::vector<Mat<F>> automorphisms() const {
        std::vector<Mat<F>> out;
        out.reserve(aut_codes_.size());
        for (auto [fc, fic] : aut_codes_) out.push_back(unpack_mat(k_, fc, v_.dim(), v_.dim()));
        return out;
    }

    /// Witness (v0, f) with OmP = f Om f^{-1} - 2 L_{v0} and the normalizing
    /// condition, if the operators are equivalent.
    std::optional<MorphismWitness<F>> find_witness(const Mat<F>& om, const Mat<F>& omp,
                                                   bool require_side_condition = true) const {
        std::size_t n = v_.dim();
        auto two = k_.add(k_.one(), k_.one());
        for (auto [fc, fic] : aut_codes_) {
            auto f = unpack_mat(k_, fc, n, n);
            auto finv = unpack_mat(k_, fic, n, n);
            auto conj = mat_mul(k_, mat_mul(k_, f, om), finv);
            for (const auto& [lmat, v0s] : lbuckets_) {
                auto cand = mat_sub(k_, conj, mat_scale(k_, two, lmat));
                if (!mat_eq(k_, cand, omp)) continue;
                if (!require_side_condition) return MorphismWitness<F>{v0s.front(), f};
                for (const auto& v0 : v0s) {
                    auto lhs = mat_apply(k_, omp, v0);
                    auto rhs = vec_sub(k_, v0, v_.mul(v0, v0));
                    if (vec_eq(k_, lhs, rhs)) return MorphismWitness<F>{v0, f};
                }
            }
        }
        return std::nullopt;
    }

    /// Partition of the given operator list into equivalence classes. One
    /// orbit sweep per class suffices: witnesses compose, so every member of
    /// a class is a one-step image of its representative.
    std::vector<EquivalenceClass<F>> classify(const std::vector<Mat<F>>& ops) const {
        std::size_t n = v_.dim();
        auto two = k_.add(k_.one(), k_.one());
        std::unordered_map<std::uint64_t, std::size_t> index;
        for (std::size_t i = 0; i < ops.size(); ++i) index[pack_mat(k_, ops[i])] = i;

        std::vector<bool> visited(ops.size(), false);
        std::vector<EquivalenceClass<F>> classes;
        for (std::size_t start = 0; start < ops.size(); ++start) {
            if (visited[start]) continue;
            const Mat<F>& rep = ops[start];
            std::vector<std::pair<Mat<F>, MorphismWitness<F>>> found;
            for (auto [fc, fic] : aut_codes_) {
                auto f = unpack_mat(k_, fc, n, n);
                auto finv = unpack_mat(k_, fic, n, n);
                auto conj = mat_mul(k_, mat_mul(k_, f, rep), finv);
                for (const auto& [lmat, v0s] : lbuckets_) {
                    auto cand = mat_sub(k_, conj, mat_scale(k_, two, lmat));
                    auto it = index.find(pack_mat(k_, cand));
                    if (it == index.end() || visited[it->second]) continue;
                    for (const auto& v0 : v0s) {
                        auto lhs = mat_apply(k_, cand, v0);
                        auto rhs = vec_sub(k_, v0, v_.mul(v0, v0));
                        if (!vec_eq(k_, lhs, rhs)) continue;
                        visited[it->second] = true;
                        found.emplace_back(ops[it->second], MorphismWitness<F>{v0, f});
                        break;
                    }
                }
            }
            std::sort(found.begin(), found.end(),
                      [](const auto& a, const auto& b) { return mat_lex_less<F>(a.first, b.first); });
            EquivalenceClass<F> cls;
            cls.representative = rep;
            for (auto& [m, w] : found) {
                cls.members.push_back(std::move(m));
                cls.witnesses.push_back(std::move(w));
            }
            classes.push_back(std::move(cls));
        }
        return classes;
    }

private:
    Algebra<F> v_;
    F k_;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> aut_codes_;  // (f, f^{-1}) packed
    std::vector<std::pair<Mat<F>, std::vector<Vec<F>>>> lbuckets_;
};

/// Equivalence of two Bernstein operators on the same 4-algebra (GF(p) only).
template <FieldType F>
std::optional<MorphismWitness<F>> are_equivalent(const Algebra<F>& v, const Mat<F>& om,
                                                 const Mat<F>& omp,
                                                 std::uint64_t budget = kDefaultBudget) {
    if constexpr (!FiniteFieldType<F>) {
        (void)v; (void)om; (void)omp; (void)budget;
        throw UnsupportedField("are_equivalent search requires GF(p)");
    } else {
        if (!is_bernstein_operator(v, om) || !is_bernstein_operator(v, omp)) throw NotOperator();
        return OperatorEquivalence<F>(v, budget).find_witness(om, omp, true);
    }
}

/// The similarity relation from the conclusions: same transformation without
/// the normalizing side condition. Equivalent operators are always similar.
template <FieldType F>
std::optional<MorphismWitness<F>> dot_similar(const Algebra<F>& v, const Mat<F>& om,
                                              const Mat<F>& omp,
                                              std::uint64_t budget = kDefaultBudget) {
    if constexpr (!FiniteFieldType<F>) {
        (void)v; (void)om; (void)omp; (void)budget;
        throw UnsupportedField("dot_similar search requires GF(p)");
    } else {
        if (!check_4algebra(v)) throw Not4Algebra();
        return OperatorEquivalence<F>(v, budget).find_witness(om, omp, false);
    }
}

/// Classes of Bernstein operators (or normal ones) on a 4-algebra over GF(p).
template <FieldType F>
std::vector<EquivalenceClass<F>> classify_operators(const Algebra<F>& v,
                                                    OperatorKind mode = OperatorKind::Bernstein,
                                                    std::uint64_t budget = kDefaultBudget) {
    if constexpr (!FiniteFieldType<F>) {
        (void)v; (void)mode; (void)budget;
        throw UnsupportedField("classify_operators requires GF(p)");
    } else {
        auto ops = enumerate_operators(v, mode, budget);
        return OperatorEquivalence<F>(v, budget).classify(ops);
    }
}

template <FieldType F>
struct AutGroupElement {
    Vec<F> v;
    Mat<F> f;
    bool operator==(const AutGroupElement&) const = default;
};

/// Group law (w, g) . (v, f) = (w + g(v), g o f).
template <FieldType F>
AutGroupElement<F> aut_compose(const F& k, const AutGroupElement<F>& a, const AutGroupElement<F>& b) {
    return AutGroupElement<F>{vec_add(k, a.v, mat_apply(k, a.f, b.v)), mat_mul(k, a.f, b.f)};
}

template <FieldType F>
AutGroupElement<F> aut_identity(const F& k, std::size_t n) {
    return AutGroupElement<F>{zero_vec<F>(k, n), identity_mat<F>(k, n)};
}

template <FieldType F>
AutGroupElement<F> aut_invert(const F& k, const AutGroupElement<F>& a) {
    auto finv = inverse(k, a.f);
    if (!finv) throw InvalidInput("aut_invert: non-invertible component");
    Vec<F> v = mat_apply(k, *finv, a.v);
    for (auto& c : v) c = k.neg(c);
    return AutGroupElement<F>{std::move(v), std::move(*finv)};
}

/// The matrix of theta(v, f) : (x, alpha) -> (f(x) + alpha v, alpha) on the
/// semidirect product, basis {e_1..e_n, f}.
template <FieldType F>
Mat<F> theta_matrix(const F& k, const AutGroupElement<F>& a) {
    std::size_t n = a.v.size();
    Mat<F> m(n + 1, n + 1, k.zero());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = a.f.at(i, j);
    for (std::size_t i = 0; i < n; ++i) m.at(i, n) = a.v[i];
    m.at(n, n) = k.one();
    return m;
}

template <FieldType F>
struct AutGroup {
    std::vector<AutGroupElement<F>> elements;  // deterministic order
    std::size_t order() const { return elements.size(); }
};

/// The group A(V, ., Omega) of pairs (v, f) in V x Aut_Alg(V) with
///   Omega(v) = v - v^2   and   f(Omega(x)) - Omega(f(x)) = 2 f(x) * v,
/// isomorphic to the Bernstein automorphism group of the semidirect product.
/// Exhaustive over GF(p): the v condition is screened first, then each
/// automorphism is matched against the surviving v candidates.
template <FieldType F>
AutGroup<F> automorphism_group(const BernsteinDatum<F>& datum,
                               std::uint64_t budget = kDefaultBudget) {
    if constexpr (!FiniteFieldType<F>) {
        (void)datum; (void)budget;
        throw UnsupportedField("automorphism_group requires GF(p)");
    } else {
        const F& k = datum.algebra.field();
        const auto& v = datum.algebra;
        const auto& om = datum.omega;
        std::size_t n = v.dim();
        auto two = k.add(k.one(), k.one());

        std::vector<std::pair<Vec<F>, Mat<F>>> v_cands;  // (v, 2 L_v)
        std::vector<std::uint64_t> digits(n, 0);
        do {
            Vec<F> cand(digits.begin(), digits.end());
            auto lhs = mat_apply(k, om, cand);
            auto rhs = vec_sub(k, cand, v.mul(cand, cand));
            if (vec_eq(k, lhs, rhs))
                v_cands.emplace_back(cand, mat_scale(k, two, v.left_mul_matrix(cand)));
        } while (next_tuple(k.size(), digits));

        AutGroup<F> group;
        for_each_algebra_map(v, v, true, budget, [&](const Mat<F>& f) {
            auto delta = mat_sub(k, mat_mul(k, f, om), mat_mul(k, om, f));
            for (const auto& [cand, twolv] : v_cands)
                if (mat_eq(k, delta, mat_mul(k, twolv, f)))
                    group.elements.push_back(AutGroupElement<F>{cand, f});
            return true;
        });
        std::sort(group.elements.begin(), group.elements.end(),
                  [](const AutGroupElement<F>& a, const AutGroupElement<F>& b) {
                      if (a.f.a != b.f.a) return a.f.a < b.f.a;
                      return a.v < b.v;
                  });
        return group;
    }
}

/// Isomorphism test for Bernstein algebras over GF(p): decompose both, carry
/// the target operator back along one kernel isomorphism, and search the
/// equivalence relation. Returns the concrete baric isomorphism matrix.
template <FieldType F>
std::optional<Mat<F>> is_isomorphic(const BaricAlgebra<F>& src, const BaricAlgebra<F>& dst,
                                    std::uint64_t budget = kDefaultBudget) {
    if constexpr (!FiniteFieldType<F>) {
        (void)src; (void)dst; (void)budget;
        throw UnsupportedField("is_isomorphic search requires GF(p); over Q verify a witness "
                               "with is_baric_iso_matrix");
    } else {
        const F& k = src.field();
        if (src.dim() != dst.dim()) return std::nullopt;
        auto ds = decompose(src);
        auto dd = decompose(dst);
        std::size_t n = ds.kernel.dim();

        // one kernel isomorphism g is enough: any iso factors through it
        std::optional<Mat<F>> g;
        for_each_algebra_map(ds.kernel, dd.kernel, true, budget, [&](const Mat<F>& f) {
            g = f;
            return false;
        });
        if (!g) return std::nullopt;
        auto ginv = *inverse(k, *g);
        auto transported = mat_mul(k, mat_mul(k, *g, ds.omega), ginv);

        OperatorEquivalence<F> eq(dd.kernel, budget);
        auto w = eq.find_witness(transported, dd.omega, true);
        if (!w) return std::nullopt;

        // assemble the concrete matrix: dst_iso o [h g | v0; 0 1] o src_iso^{-1}
        MorphismWitness<F> datum_witness{w->v0, mat_mul(k, w->f, *g)};
        Mat<F> split(n + 1, n + 1, k.zero());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) split.at(i, j) = datum_witness.f.at(i, j);
        for (std::size_t i = 0; i < n; ++i) split.at(i, n) = datum_witness.v0[i];
        split.at(n, n) = k.one();

        auto src_iso = decomposition_iso_matrix(k, ds);
        auto dst_iso = decomposition_iso_matrix(k, dd);
        auto m = mat_mul(k, dst_iso, mat_mul(k, split, *inverse(k, src_iso)));
        return m;
    }
}

}  // namespace bernstein
