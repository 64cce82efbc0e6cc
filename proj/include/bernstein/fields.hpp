#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <concepts>
#include <cstdint>
#include <string>
#include <vector>

#include "bernstein/errors.hpp"

namespace bernstein {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

enum class FieldKind { Rationals, PrimeField };

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Runtime description of a coefficient field: Q, or GF(p) for an odd prime p.
/// Characteristic 2 is rejected at construction; every field here contains 1/2.
struct FieldSpec {
    FieldKind kind = FieldKind::Rationals;
    std::uint64_t p = 0;  // modulus, meaningful iff kind == PrimeField

    static FieldSpec rationals() { return FieldSpec{FieldKind::Rationals, 0}; }

    static FieldSpec prime(std::uint64_t p) {
        if (p == 2) throw CharTwo();
        if (!is_prime_u64(p) || p < 3)
            throw InvalidInput("GF(p) requires an odd prime p >= 3, got p = " + std::to_string(p));
        return FieldSpec{FieldKind::PrimeField, p};
    }

    bool operator==(const FieldSpec&) const = default;

    std::string name() const {
        return kind == FieldKind::Rationals ? "Q" : "GF(" + std::to_string(p) + ")";
    }
};

/// The rational field Q. Elements are arbitrary-precision reduced fractions
/// with positive denominator (normalization is done by the representation).
class Rationals {
public:
    using Elem = BigRat;

    FieldSpec spec() const { return FieldSpec::rationals(); }

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    Elem from_int(long long v) const { return Elem(v); }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }

    Elem inv(const Elem& a) const {
        if (a == 0) throw ZeroInverse();
        return Elem(1) / a;
    }

    Elem half() const { return Elem(BigInt(1), BigInt(2)); }

    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }

    /// Canonical "n" or "n/d" form; round-trips bit-exactly through parse().
    std::string to_string(const Elem& a) const {
        if (denominator(a) == 1) return numerator(a).str();
        return numerator(a).str() + "/" + denominator(a).str();
    }

    Elem parse(const std::string& s) const {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Elem(BigInt(s));
            BigInt num(s.substr(0, slash));
            BigInt den(s.substr(slash + 1));
            if (den == 0) throw InvalidInput("zero denominator in rational '" + s + "'");
            if (den < 0) { num = -num; den = -den; }
            return Elem(num, den);
        } catch (const std::runtime_error& e) {
            throw InvalidInput("cannot parse rational '" + s + "': " + e.what());
        }
    }
};

/// The prime field GF(p), p an odd prime. Elements are residues in [0, p).
class PrimeField {
public:
    using Elem = std::uint64_t;

    PrimeField() = default;
    explicit PrimeField(std::uint64_t p) : p_(FieldSpec::prime(p).p) {}
    explicit PrimeField(const FieldSpec& fs) : PrimeField(fs.p) {}

    std::uint64_t modulus() const { return p_; }
    std::uint64_t size() const { return p_; }
    FieldSpec spec() const { return FieldSpec::prime(p_); }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }

    Elem from_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += static_cast<long long>(p_);
        return static_cast<Elem>(r);
    }

    Elem add(Elem a, Elem b) const {
        Elem s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
    Elem mul(Elem a, Elem b) const { return (a * b) % p_; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }

    Elem inv(Elem a) const {
        if (a == 0) throw ZeroInverse();
        return pow(a, p_ - 2);
    }

    Elem half() const { return inv(2); }

    Elem pow(Elem a, std::uint64_t e) const {
        Elem r = 1, b = a % p_;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }

    std::string to_string(Elem a) const { return std::to_string(a); }

    /// Accepts plain integers and "n/d" fractions (reduced mod p, d invertible).
    Elem parse(const std::string& s) const {
        try {
            auto slash = s.find('/');
            if (slash == std::string::npos) return from_int(std::stoll(s));
            Elem num = from_int(std::stoll(s.substr(0, slash)));
            Elem den = from_int(std::stoll(s.substr(slash + 1)));
            return mul(num, inv(den));
        } catch (const ZeroInverse&) {
            throw InvalidInput("denominator of '" + s + "' is zero mod " + std::to_string(p_));
        } catch (const std::exception&) {
            throw InvalidInput("cannot parse GF(" + std::to_string(p_) + ") residue '" + s + "'");
        }
    }

private:
    std::uint64_t p_ = 3;
};

template <typename F>
concept FieldType = requires(const F k, typename F::Elem a) {
    { k.zero() } -> std::convertible_to<typename F::Elem>;
    { k.one() } -> std::convertible_to<typename F::Elem>;
    { k.add(a, a) } -> std::convertible_to<typename F::Elem>;
    { k.mul(a, a) } -> std::convertible_to<typename F::Elem>;
    { k.inv(a) } -> std::convertible_to<typename F::Elem>;
    { k.is_zero(a) } -> std::convertible_to<bool>;
    { k.spec() } -> std::convertible_to<FieldSpec>;
};

template <typename F>
concept FiniteFieldType = FieldType<F> && requires(const F k) {
    { k.size() } -> std::convertible_to<std::uint64_t>;
};

/// Dispatch a generic callable on the concrete field described by `fs`.
template <typename Fn>
decltype(auto) with_field(const FieldSpec& fs, Fn&& fn) {
    if (fs.kind == FieldKind::Rationals) return fn(Rationals{});
    return fn(PrimeField{fs.p});
}

inline void require_same_field(const FieldSpec& a, const FieldSpec& b, const std::string& where) {
    if (!(a == b)) throw FieldMismatch(where + ": " + a.name() + " vs " + b.name());
}

}  // namespace bernstein
