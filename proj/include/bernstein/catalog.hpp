#pragma once

#include <string>
#include <variant>
#include <vector>

#include "bernstein/algebra.hpp"
#include "bernstein/bernop.hpp"
#include "bernstein/construct.hpp"
#include "bernstein/errors.hpp"
#include "bernstein/fields.hpp"
#include "bernstein/linalg.hpp"

namespace bernstein {

/// A named algebra, Bernstein algebra, or operator matrix from the built-in
/// collection of small classification examples. Every entry re-validates its
/// defining identities when it is materialized over the requested field.
template <FieldType F>
struct CatalogEntry {
    std::string name;
    std::string provenance;
    std::variant<Algebra<F>, BaricAlgebra<F>, Mat<F>> value;

    const Algebra<F>& as_algebra() const { return std::get<Algebra<F>>(value); }
    const BaricAlgebra<F>& as_baric() const { return std::get<BaricAlgebra<F>>(value); }
    const Mat<F>& as_matrix() const { return std::get<Mat<F>>(value); }
};

inline const std::vector<std::pair<std::string, std::string>>& catalog_names() {
    static const std::vector<std::pair<std::string, std::string>> names = {
        {"V0", "two-dimensional abelian 4-algebra (all products zero)"},
        {"V1", "two-dimensional 4-algebra with e1*e1 = e2"},
        {"V2", "two-dimensional 4-algebra with e1*e2 = e2"},
        {"abelian1", "one-dimensional abelian 4-algebra"},
        {"abelian2", "alias of V0"},
        {"abelian3", "three-dimensional abelian 4-algebra"},
        {"exnetri.V", "three-dimensional 4-algebra with e1*e2 = e1"},
        {"W", "alias of exnetri.V"},
        {"exnetri.Omega1", "Bernstein operator diag(1,0,1) on exnetri.V"},
        {"exnetri.Omega2", "Bernstein operator diag(1,0,0) on exnetri.V"},
        {"exnetri.Omega3", "Bernstein operator e1->e1, e3->e1 on exnetri.V"},
        {"A1", "two-dimensional Bernstein algebra f*f = f"},
        {"A2", "two-dimensional Bernstein algebra f*f = f, e1*f = 1/2 e1"},
        {"A3", "three-dimensional Bernstein algebra f*f = f, ei*f = 1/2 ei"},
    };
    return names;
}

namespace detail {

template <FieldType F>
Algebra<F> exnetri_algebra(const F& k) {
    Algebra<F> v(k, 3);
    Vec<F> e1(3, k.zero());
    e1[0] = k.one();
    v.set_product(0, 1, e1);
    return v;
}

}  // namespace detail

/// Operator matrices are stored column-convention (column j = image of e_j);
/// sources that write endomorphisms acting on row vectors display the
/// transposes of these matrices.
template <FieldType F>
CatalogEntry<F> catalog(const F& k, const std::string& name) {
    auto alg_entry = [&](const std::string& prov, Algebra<F> a) {
        if (!check_4algebra(a)) throw InvalidInput("catalog entry failed 4-algebra validation");
        return CatalogEntry<F>{name, prov, std::move(a)};
    };
    auto baric_entry = [&](const std::string& prov, BaricAlgebra<F> b) {
        if (!check_bernstein(b)) throw InvalidInput("catalog entry failed Bernstein validation");
        return CatalogEntry<F>{name, prov, std::move(b)};
    };
    auto op_entry = [&](const std::string& prov, Mat<F> m) {
        if (!is_bernstein_operator(detail::exnetri_algebra(k), m))
            throw InvalidInput("catalog entry failed operator validation");
        return CatalogEntry<F>{name, prov, std::move(m)};
    };

    if (name == "V0" || name == "abelian2")
        return alg_entry("two-dimensional abelian 4-algebra", Algebra<F>::abelian(k, 2));
    if (name == "abelian1")
        return alg_entry("one-dimensional abelian 4-algebra", Algebra<F>::abelian(k, 1));
    if (name == "abelian3")
        return alg_entry("three-dimensional abelian 4-algebra", Algebra<F>::abelian(k, 3));
    if (name == "V1") {
        Algebra<F> v(k, 2);
        Vec<F> e2(2, k.zero());
        e2[1] = k.one();
        v.set_product(0, 0, e2);
        return alg_entry("2-dim 4-algebra, e1*e1 = e2", std::move(v));
    }
    if (name == "V2") {
        Algebra<F> v(k, 2);
        Vec<F> e2(2, k.zero());
        e2[1] = k.one();
        v.set_product(0, 1, e2);
        return alg_entry("2-dim 4-algebra, e1*e2 = e2", std::move(v));
    }
    if (name == "exnetri.V" || name == "W")
        return alg_entry("3-dim 4-algebra, e1*e2 = e1", detail::exnetri_algebra(k));
    if (name == "exnetri.Omega1") {
        Mat<F> m(3, 3, k.zero());
        m.at(0, 0) = k.one();
        m.at(2, 2) = k.one();
        return op_entry("class representative Omega1 on exnetri.V", std::move(m));
    }
    if (name == "exnetri.Omega2") {
        Mat<F> m(3, 3, k.zero());
        m.at(0, 0) = k.one();
        return op_entry("class representative Omega2 on exnetri.V", std::move(m));
    }
    if (name == "exnetri.Omega3") {
        Mat<F> m(3, 3, k.zero());
        m.at(0, 0) = k.one();
        m.at(0, 2) = k.one();
        // Note: displayed quotient sets for exnetri.V sometimes repeat Omega2;
        // the three distinct representatives are Omega1, Omega2 and this one.
        return op_entry("class representative Omega3 on exnetri.V (e1->e1, e3->e1)", std::move(m));
    }
    if (name == "A1")
        return baric_entry("2-dim Bernstein algebra, zero operator on a 1-dim abelian kernel",
                           trivial_bernstein(k, 1, zero_mat<F>(k, 1, 1)));
    if (name == "A2")
        return baric_entry("2-dim Bernstein algebra, identity operator on a 1-dim abelian kernel",
                           trivial_bernstein(k, 1, identity_mat<F>(k, 1)));
    if (name == "A3")
        return baric_entry("3-dim unit Bernstein algebra: identity operator on a 2-dim abelian kernel",
                           trivial_bernstein(k, 2, identity_mat<F>(k, 2)));
    throw UnknownName(name);
}

/// The two operator families on exnetri.V, column convention:
/// family_one(alpha, beta) fixes e1 and e3 and sends e2 -> alpha e1 + beta e3;
/// family_two(gamma, delta) fixes e1 and sends e2 -> gamma e1, e3 -> delta e1.
template <FieldType F>
Mat<F> exnetri_family_one(const F& k, const typename F::Elem& alpha, const typename F::Elem& beta) {
    Mat<F> m(3, 3, k.zero());
    m.at(0, 0) = k.one();
    m.at(0, 1) = alpha;
    m.at(2, 1) = beta;
    m.at(2, 2) = k.one();
    return m;
}

template <FieldType F>
Mat<F> exnetri_family_two(const F& k, const typename F::Elem& gamma, const typename F::Elem& delta) {
    Mat<F> m(3, 3, k.zero());
    m.at(0, 0) = k.one();
    m.at(0, 1) = gamma;
    m.at(0, 2) = delta;
    return m;
}

/// Every named Bernstein algebra in the catalog, for sweep-style tests.
template <FieldType F>
std::vector<CatalogEntry<F>> catalog_bernstein_algebras(const F& k) {
    std::vector<CatalogEntry<F>> out;
    for (const char* name : {"A1", "A2", "A3"}) out.push_back(catalog(k, name));
    auto w = detail::exnetri_algebra(k);
    for (const char* name : {"exnetri.Omega1", "exnetri.Omega2", "exnetri.Omega3"}) {
        auto entry = catalog(k, name);
        out.push_back(CatalogEntry<F>{std::string("semidirect(exnetri.V, ") + name + ")",
                                      "semidirect product of exnetri.V with " + std::string(name),
                                      semidirect(w, entry.as_matrix())});
    }
    return out;
}

}  // namespace bernstein
