#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bernstein/errors.hpp"
#include "bernstein/fields.hpp"
#include "bernstein/linalg.hpp"

namespace bernstein {

/// Sparse multivariate polynomial over an exact field, indexed by exponent
/// tuples. Zero coefficients are never stored, so identical polynomials have
/// identical term maps regardless of how they were assembled. Everything this
/// library checks stays at total degree <= 4.
template <FieldType F>
class Poly {
public:
    using Elem = typename F::Elem;
    using Monomial = std::vector<std::uint8_t>;

    Poly(const F& k, std::size_t nvars) : k_(k), nvars_(nvars) {}

    static Poly constant(const F& k, std::size_t nvars, const Elem& c) {
        Poly p(k, nvars);
        p.add_term(Monomial(nvars, 0), c);
        return p;
    }

    static Poly variable(const F& k, std::size_t nvars, std::size_t i) {
        Poly p(k, nvars);
        Monomial m(nvars, 0);
        m[i] = 1;
        p.add_term(m, k.one());
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const std::map<Monomial, Elem>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Monomial& m, const Elem& c) {
        if (k_.is_zero(c)) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second = k_.add(it->second, c);
            if (k_.is_zero(it->second)) terms_.erase(it);
        }
    }

    Poly operator+(const Poly& o) const {
        check(o);
        Poly r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }

    Poly operator-(const Poly& o) const {
        check(o);
        Poly r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, k_.neg(c));
        return r;
    }

    Poly operator-() const {
        Poly r(k_, nvars_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, k_.neg(c));
        return r;
    }

    Poly operator*(const Poly& o) const {
        check(o);
        Poly r(k_, nvars_);
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_) {
                Monomial m(nvars_);
                for (std::size_t i = 0; i < nvars_; ++i)
                    m[i] = static_cast<std::uint8_t>(ma[i] + mb[i]);
                r.add_term(m, k_.mul(ca, cb));
            }
        return r;
    }

    Poly scaled(const Elem& c) const {
        Poly r(k_, nvars_);
        if (k_.is_zero(c)) return r;
        for (const auto& [m, co] : terms_) r.terms_.emplace(m, k_.mul(c, co));
        return r;
    }

    bool operator==(const Poly& o) const {
        if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
        auto it = o.terms_.begin();
        for (const auto& [m, c] : terms_) {
            if (m != it->first || !k_.eq(c, it->second)) return false;
            ++it;
        }
        return true;
    }

    std::size_t total_degree() const {
        std::size_t d = 0;
        for (const auto& [m, c] : terms_) {
            std::size_t s = 0;
            for (auto e : m) s += e;
            if (s > d) d = s;
        }
        return d;
    }

    Elem evaluate(const Vec<F>& point) const {
        if (point.size() != nvars_) throw DimensionMismatch("Poly::evaluate: point size");
        Elem acc = k_.zero();
        for (const auto& [m, c] : terms_) {
            Elem t = c;
            for (std::size_t i = 0; i < nvars_; ++i)
                for (std::uint8_t e = 0; e < m[i]; ++e) t = k_.mul(t, point[i]);
            acc = k_.add(acc, t);
        }
        return acc;
    }

    /// First stored term in monomial order, as "coeff * x0^e0...", for
    /// counterexample reporting. Empty string when zero.
    std::string leading_term_string() const {
        if (terms_.empty()) return "";
        const auto& [m, c] = *terms_.begin();
        std::string s = k_.to_string(c);
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (m[i] == 0) continue;
            s += " * x" + std::to_string(i);
            if (m[i] > 1) s += "^" + std::to_string(m[i]);
        }
        return s;
    }

private:
    void check(const Poly& o) const {
        if (nvars_ != o.nvars_) throw DimensionMismatch("Poly: variable count mismatch");
        require_same_field(k_.spec(), o.k_.spec(), "Poly");
    }

    F k_;
    std::size_t nvars_;
    std::map<Monomial, Elem> terms_;
};

/// Coordinate vector of polynomials, one entry per basis vector of the algebra.
template <FieldType F>
using PolyVec = std::vector<Poly<F>>;

template <FieldType F>
bool polyvec_is_zero(const PolyVec<F>& v) {
    for (const auto& p : v)
        if (!p.is_zero()) return false;
    return true;
}

template <FieldType F>
PolyVec<F> polyvec_sub(const PolyVec<F>& u, const PolyVec<F>& v) {
    PolyVec<F> w;
    w.reserve(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) w.push_back(u[i] - v[i]);
    return w;
}

/// Apply a scalar matrix to a vector of polynomials.
template <FieldType F>
PolyVec<F> mat_apply_poly(const F& k, const Mat<F>& m, const PolyVec<F>& v) {
    if (m.cols != v.size()) throw DimensionMismatch("mat_apply_poly: size");
    std::size_t nv = v.empty() ? 0 : v[0].nvars();
    PolyVec<F> w;
    w.reserve(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) {
        Poly<F> acc(k, nv);
        for (std::size_t j = 0; j < m.cols; ++j)
            acc = acc + v[j].scaled(m.at(i, j));
        w.push_back(std::move(acc));
    }
    return w;
}

}  // namespace bernstein
