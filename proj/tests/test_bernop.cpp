#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "test_support.hpp"

using namespace bernstein;
using support::K;

namespace {

// polynomial-engine version of the normal-operator conditions, used here as a
// cross-check of the basis-level implementation
bool poly_normal_operator(const Algebra<K>& v, const Mat<K>& om) {
    const K& k = v.field();
    std::size_t n = v.dim();
    if (!is_idempotent(k, om)) return false;
    auto x = v.generic_element(2 * n, 0);
    auto y = v.generic_element(2 * n, n);
    if (!polyvec_is_zero(mat_apply_poly(k, om, v.mul_poly(x, x)))) return false;
    auto omx = mat_apply_poly(k, om, x);
    return polyvec_is_zero(polyvec_sub(v.mul_poly(omx, y), v.mul_poly(x, y)));
}

}  // namespace

TEST_CASE("Bernstein operator predicate") {
    PrimeField k(5);
    auto w = catalog(k, "W").as_algebra();

    SECTION("the three named operators on exnetri.V") {
        CHECK(is_bernstein_operator(w, catalog(k, "exnetri.Omega1").as_matrix()));
        CHECK(is_bernstein_operator(w, catalog(k, "exnetri.Omega2").as_matrix()));
        CHECK(is_bernstein_operator(w, catalog(k, "exnetri.Omega3").as_matrix()));
    }

    SECTION("on an abelian algebra the operators are exactly the idempotents") {
        auto v = Algebra<K>::abelian(k, 2);
        std::mt19937_64 rng(3);
        for (int i = 0; i < 50; ++i) {
            auto m = support::random_matrix(k, 2, rng);
            CHECK(is_bernstein_operator(v, m) == is_idempotent(k, m));
        }
    }

    SECTION("0 and Id are operators only on the abelian algebra") {
        auto v1 = catalog(k, "V1").as_algebra();
        CHECK_FALSE(is_bernstein_operator(v1, zero_mat<K>(k, 2, 2)));
        CHECK_FALSE(is_bernstein_operator(v1, identity_mat<K>(k, 2)));
        auto v0 = catalog(k, "V0").as_algebra();
        CHECK(is_bernstein_operator(v0, zero_mat<K>(k, 2, 2)));
        CHECK(is_bernstein_operator(v0, identity_mat<K>(k, 2)));
    }

    SECTION("precondition: the algebra must be a 4-algebra") {
        Algebra<K> bad(k, 1);
        bad.set_product_coord(0, 0, 0, 1);
        CHECK_THROWS_AS(is_bernstein_operator(bad, identity_mat<K>(k, 1)), Not4Algebra);
    }
}

TEST_CASE("normal Bernstein operator predicate") {
    PrimeField k(5);
    auto v1 = catalog(k, "V1").as_algebra();

    SECTION("the V1 family [[1,0],[r,0]]") {
        for (std::uint64_t r = 0; r < 5; ++r) {
            Mat<K> om(2, 2, 0);
            om.at(0, 0) = 1;
            om.at(1, 0) = r;
            CHECK(is_normal_bernstein_operator(v1, om));
        }
    }

    SECTION("[[0,0],[0,1]] maps e1^2 to e2 and fails") {
        Mat<K> om(2, 2, 0);
        om.at(1, 1) = 1;
        CHECK_FALSE(is_normal_bernstein_operator(v1, om));
    }

    SECTION("V2 admits no normal operator") {
        auto v2 = catalog(k, "V2").as_algebra();
        CHECK(enumerate_operators(v2, OperatorKind::Normal).empty());
        for (const auto& m : support::all_matrices(k, 2, 2))
            CHECK_FALSE(is_normal_bernstein_operator(v2, m));
    }
}

TEST_CASE("squared and linearized formulations agree") {
    SECTION("exhaustively on all 2x2 matrices, GF(3) and GF(5)") {
        for (std::uint64_t p : {3ull, 5ull}) {
            PrimeField k(p);
            for (const char* name : {"V0", "V1", "V2"}) {
                auto v = catalog(k, name).as_algebra();
                for (const auto& m : support::all_matrices(k, 2, 2))
                    CHECK(is_bernstein_operator(v, m) == is_bernstein_operator_linearized(v, m));
            }
        }
    }

    SECTION("on random 3x3 matrices over exnetri.V") {
        PrimeField k(5);
        auto w = catalog(k, "W").as_algebra();
        std::mt19937_64 rng(7);
        for (int i = 0; i < 300; ++i) {
            auto m = support::random_matrix(k, 3, rng);
            CHECK(is_bernstein_operator(w, m) == is_bernstein_operator_linearized(w, m));
        }
    }

    SECTION("normal predicate agrees with its polynomial form") {
        PrimeField k(3);
        for (const char* name : {"V0", "V1", "V2"}) {
            auto v = catalog(k, name).as_algebra();
            for (const auto& m : support::all_matrices(k, 2, 2))
                CHECK(is_normal_bernstein_operator(v, m) == poly_normal_operator(v, m));
        }
    }
}

TEST_CASE("operator enumeration") {
    PrimeField k(5);

    SECTION("exnetri.V: 50 operators, the union of the two families") {
        auto w = catalog(k, "W").as_algebra();
        auto ops = enumerate_operators(w, OperatorKind::Bernstein);
        REQUIRE(ops.size() == 50);
        std::vector<Mat<K>> families;
        for (std::uint64_t a = 0; a < 5; ++a)
            for (std::uint64_t b = 0; b < 5; ++b) {
                families.push_back(exnetri_family_one(k, a, b));
                families.push_back(exnetri_family_two(k, a, b));
            }
        std::sort(families.begin(), families.end(), mat_lex_less<K>);
        CHECK(ops == families);
        CHECK(enumerate_operators(w, OperatorKind::Normal).empty());
    }

    SECTION("abelian dim 2: all idempotents, frozen count 32") {
        auto v = Algebra<K>::abelian(k, 2);
        auto ops = enumerate_operators(v, OperatorKind::Bernstein);
        CHECK(ops.size() == 32);
        std::size_t brute = 0;
        for (const auto& m : support::all_matrices(k, 2, 2))
            if (is_idempotent(k, m)) ++brute;
        CHECK(ops.size() == brute);
        CHECK(enumerate_operators(v, OperatorKind::Normal) == ops);
    }

    SECTION("V1: exactly the two one-parameter families, 10 operators") {
        auto v1 = catalog(k, "V1").as_algebra();
        auto ops = enumerate_operators(v1, OperatorKind::Bernstein);
        REQUIRE(ops.size() == 10);
        std::vector<Mat<K>> expected;
        for (std::uint64_t r = 0; r < 5; ++r) {
            Mat<K> a(2, 2, 0), b(2, 2, 0);
            a.at(0, 0) = 1;
            a.at(1, 0) = r;
            b.at(1, 0) = r;
            b.at(1, 1) = 1;
            expected.push_back(a);
            expected.push_back(b);
        }
        std::sort(expected.begin(), expected.end(), mat_lex_less<K>);
        CHECK(ops == expected);

        auto nbo = enumerate_operators(v1, OperatorKind::Normal);
        CHECK(nbo.size() == 5);  // the [[1,0],[r,0]] family only
    }

    SECTION("agrees with filtering every matrix by the symbolic predicate") {
        for (std::uint64_t p : {3ull, 5ull}) {
            PrimeField kk(p);
            for (const char* name : {"V0", "V1", "V2"}) {
                auto v = catalog(kk, name).as_algebra();
                std::vector<Mat<K>> brute, brute_normal;
                for (const auto& m : support::all_matrices(kk, 2, 2)) {
                    if (is_bernstein_operator(v, m)) brute.push_back(m);
                    if (is_normal_bernstein_operator(v, m)) brute_normal.push_back(m);
                }
                std::sort(brute.begin(), brute.end(), mat_lex_less<K>);
                std::sort(brute_normal.begin(), brute_normal.end(), mat_lex_less<K>);
                CHECK(enumerate_operators(v, OperatorKind::Bernstein) == brute);
                CHECK(enumerate_operators(v, OperatorKind::Normal) == brute_normal);
            }
        }
    }

    SECTION("enumerated operators pass the pointwise oracle; random rejects agree") {
        auto w = catalog(k, "W").as_algebra();
        for (const auto& om : enumerate_operators(w, OperatorKind::Bernstein))
            CHECK(support::pointwise_operator(w, om));
        std::mt19937_64 rng(13);
        for (int i = 0; i < 200; ++i) {
            auto m = support::random_matrix(k, 3, rng);
            CHECK(is_bernstein_operator(w, m) == support::pointwise_operator(w, m));
            CHECK(is_normal_bernstein_operator(w, m) == support::pointwise_normal_operator(w, m));
        }
    }

    SECTION("normal output is contained in the Bernstein output") {
        for (const char* name : {"V0", "V1", "V2", "W"}) {
            auto v = catalog(k, name).as_algebra();
            auto bo = enumerate_operators(v, OperatorKind::Bernstein);
            for (const auto& m : enumerate_operators(v, OperatorKind::Normal))
                CHECK(std::binary_search(bo.begin(), bo.end(), m, mat_lex_less<K>));
        }
    }

    SECTION("idempotent rank decomposition") {
        auto w = catalog(k, "W").as_algebra();
        for (const auto& om : enumerate_operators(w, OperatorKind::Bernstein)) {
            auto complement = mat_sub(k, identity_mat<K>(k, 3), om);
            CHECK(rank(k, om) + rank(k, complement) == 3);
        }
    }

    SECTION("output is sorted in row-major lexicographic order") {
        auto v1 = catalog(k, "V1").as_algebra();
        auto ops = enumerate_operators(v1, OperatorKind::Bernstein);
        for (std::size_t i = 1; i < ops.size(); ++i) CHECK(mat_lex_less(ops[i - 1], ops[i]));
        CHECK(ops.front().a == std::vector<std::uint64_t>{0, 0, 0, 1});
    }

    SECTION("parametrized families verify over Q at rational parameter values") {
        Rationals q;
        auto wq = catalog(q, "W").as_algebra();
        const char* params[] = {"0", "1", "-1", "1/2", "-7/3", "22/7"};
        for (const char* a : params)
            for (const char* b : params) {
                CHECK(is_bernstein_operator(wq, exnetri_family_one(q, q.parse(a), q.parse(b))));
                CHECK(is_bernstein_operator(wq, exnetri_family_two(q, q.parse(a), q.parse(b))));
            }
        // a perturbed member fails
        auto bad = exnetri_family_one(q, q.parse("1"), q.parse("1"));
        bad.at(1, 1) = q.one();
        CHECK_FALSE(is_bernstein_operator(wq, bad));
    }

    SECTION("unsupported over Q; budget violations throw") {
        Rationals q;
        CHECK_THROWS_AS(enumerate_operators(catalog(q, "V1").as_algebra(), OperatorKind::Bernstein),
                        UnsupportedField);
        auto w = catalog(k, "W").as_algebra();
        CHECK_THROWS_AS(enumerate_operators(w, OperatorKind::Bernstein, 10), BudgetExceeded);
    }
}
