#pragma once

#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "bernstein/algebra.hpp"
#include "bernstein/errors.hpp"
#include "bernstein/fields.hpp"
#include "bernstein/linalg.hpp"
#include "bernstein/morphism.hpp"

namespace bernstein {

using Json = nlohmann::json;

// Field spec: {"field":"Q"} or {"field":"GF","p":5}

inline Json field_to_json(const FieldSpec& fs) {
    if (fs.kind == FieldKind::Rationals) return Json{{"field", "Q"}};
    return Json{{"field", "GF"}, {"p", fs.p}};
}

inline FieldSpec field_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("field"))
        throw InvalidInput("field spec must be {\"field\":\"Q\"} or {\"field\":\"GF\",\"p\":p}");
    auto kind = j.at("field").get<std::string>();
    if (kind == "Q") return FieldSpec::rationals();
    if (kind == "GF") {
        if (!j.contains("p") || !j.at("p").is_number_integer() || j.at("p").get<long long>() < 0)
            throw InvalidInput("GF field spec requires a positive prime \"p\"");
        return FieldSpec::prime(j.at("p").get<std::uint64_t>());
    }
    throw InvalidInput("unknown field kind '" + kind + "'");
}

// Scalars: GF(p) residues as numbers; rationals as integers when the
// denominator is 1 and the numerator fits, "n/d" strings otherwise. Either
// way the round trip is bit-exact.

template <FieldType F>
Json scalar_to_json(const F& k, const typename F::Elem& e) {
    if constexpr (FiniteFieldType<F>) {
        return Json(e);
    } else {
        if (denominator(e) == 1 && numerator(e) >= std::numeric_limits<long long>::min() &&
            numerator(e) <= std::numeric_limits<long long>::max())
            return Json(static_cast<long long>(numerator(e)));
        return Json(k.to_string(e));
    }
}

template <FieldType F>
typename F::Elem scalar_from_json(const F& k, const Json& j) {
    if (j.is_number_integer()) return k.from_int(j.get<long long>());
    if (j.is_string()) return k.parse(j.get<std::string>());
    throw InvalidInput("scalar must be an integer or a \"n/d\" string, got: " + j.dump());
}

template <FieldType F>
Json vec_to_json(const F& k, const Vec<F>& v) {
    Json out = Json::array();
    for (const auto& e : v) out.push_back(scalar_to_json(k, e));
    return out;
}

template <FieldType F>
Vec<F> vec_from_json(const F& k, const Json& j) {
    if (!j.is_array()) throw InvalidInput("vector must be a JSON array");
    Vec<F> v;
    for (const auto& e : j) v.push_back(scalar_from_json(k, e));
    return v;
}

// Matrices: {"matrix": [[row], [row], ...]}, row-major; "field" optional.

template <FieldType F>
Json mat_to_json(const F& k, const Mat<F>& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols; ++j) row.push_back(scalar_to_json(k, m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return Json{{"matrix", std::move(rows)}};
}

template <FieldType F>
Mat<F> mat_from_json(const F& k, const Json& j) {
    const Json& rows = j.is_object() && j.contains("matrix") ? j.at("matrix") : j;
    if (j.is_object() && j.contains("field"))
        require_same_field(field_from_json(j.at("field")), k.spec(), "matrix");
    if (!rows.is_array() || rows.empty()) throw InvalidInput("matrix must be a non-empty array of rows");
    std::size_t nc = rows.at(0).size();
    Mat<F> m(rows.size(), nc, k.zero());
    for (std::size_t i = 0; i < m.rows; ++i) {
        if (!rows.at(i).is_array() || rows.at(i).size() != nc)
            throw InvalidInput("matrix rows must all have the same length");
        for (std::size_t c = 0; c < nc; ++c) m.at(i, c) = scalar_from_json(k, rows.at(i).at(c));
    }
    return m;
}

// Algebras: {"field":..., "dim":n, "basis":[...], "sc":[[i,j,k,value],...]}
// with 0-based indices and i <= j only; BaricAlgebra adds "weight".

template <FieldType F>
Json algebra_to_json(const F& k, const Algebra<F>& a) {
    Json sc = Json::array();
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i; j < a.dim(); ++j)
            for (std::size_t t = 0; t < a.dim(); ++t)
                if (!k.is_zero(a.sc(i, j, t)))
                    sc.push_back(Json::array({i, j, t, scalar_to_json(k, a.sc(i, j, t))}));
    return Json{{"field", field_to_json(k.spec())},
                {"dim", a.dim()},
                {"basis", a.basis_names()},
                {"sc", std::move(sc)}};
}

/// With check_field = false the scalar entries are parsed in the target field
/// regardless of the document's own field tag; used to reduce a rational
/// catalog mod p.
template <FieldType F>
Algebra<F> algebra_from_json(const F& k, const Json& j, bool check_field = true) {
    if (!j.is_object() || !j.contains("dim")) throw InvalidInput("algebra JSON requires \"dim\"");
    if (check_field && j.contains("field"))
        require_same_field(field_from_json(j.at("field")), k.spec(), "algebra");
    std::size_t dim = j.at("dim").get<std::size_t>();
    std::vector<std::string> basis;
    if (j.contains("basis")) basis = j.at("basis").get<std::vector<std::string>>();
    Algebra<F> a(k, dim, std::move(basis));
    std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
    if (j.contains("sc")) {
        for (const auto& entry : j.at("sc")) {
            if (!entry.is_array() || entry.size() != 4)
                throw InvalidInput("sc entries must be [i, j, k, value]");
            std::size_t i = entry.at(0).get<std::size_t>();
            std::size_t jj = entry.at(1).get<std::size_t>();
            std::size_t t = entry.at(2).get<std::size_t>();
            if (i > jj)
                throw InvalidInput("sc entry with i > j rejected (specify each product once, i <= j)");
            if (!seen.insert({i, jj, t}).second)
                throw InvalidInput("duplicate sc entry for (i, j, k) = (" + std::to_string(i) + "," +
                                   std::to_string(jj) + "," + std::to_string(t) + ")");
            a.set_product_coord(i, jj, t, scalar_from_json(k, entry.at(3)));
        }
    }
    return a;
}

template <FieldType F>
Json baric_to_json(const F& k, const BaricAlgebra<F>& b, int distinguished = -1) {
    Json j = algebra_to_json(k, b.algebra());
    j["weight"] = vec_to_json(k, b.weight_vector());
    if (distinguished >= 0) j["distinguished"] = distinguished;
    return j;
}

template <FieldType F>
BaricAlgebra<F> baric_from_json(const F& k, const Json& j) {
    if (!j.contains("weight")) throw InvalidInput("baric algebra JSON requires \"weight\"");
    return BaricAlgebra<F>(algebra_from_json(k, j), vec_from_json(k, j.at("weight")));
}

// Morphism witnesses: {"v0": [...], "f": [[...]]}

template <FieldType F>
Json witness_to_json(const F& k, const MorphismWitness<F>& w) {
    return Json{{"v0", vec_to_json(k, w.v0)}, {"f", mat_to_json(k, w.f).at("matrix")}};
}

template <FieldType F>
MorphismWitness<F> witness_from_json(const F& k, const Json& j) {
    if (!j.contains("v0") || !j.contains("f"))
        throw InvalidInput("witness JSON requires \"v0\" and \"f\"");
    return MorphismWitness<F>{vec_from_json(k, j.at("v0")), mat_from_json(k, j.at("f"))};
}

// Bernstein data: {"algebra": {...}, "operator": {...}}

template <FieldType F>
Json datum_to_json(const F& k, const BernsteinDatum<F>& d) {
    return Json{{"algebra", algebra_to_json(k, d.algebra)}, {"operator", mat_to_json(k, d.omega)}};
}

template <FieldType F>
BernsteinDatum<F> datum_from_json(const F& k, const Json& j, bool validate = true) {
    if (!j.contains("algebra") || !j.contains("operator"))
        throw InvalidInput("datum JSON requires \"algebra\" and \"operator\"");
    return BernsteinDatum<F>(algebra_from_json(k, j.at("algebra")),
                             mat_from_json(k, j.at("operator")), validate);
}

/// Field spec embedded in a document (or Q when absent).
inline FieldSpec peek_field(const Json& j) {
    if (j.is_object() && j.contains("field")) return field_from_json(j.at("field"));
    if (j.is_object() && j.contains("algebra")) return peek_field(j.at("algebra"));
    return FieldSpec::rationals();
}

}  // namespace bernstein
