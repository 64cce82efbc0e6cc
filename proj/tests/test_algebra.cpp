#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "test_support.hpp"

using namespace bernstein;
using support::K;

TEST_CASE("structure-constant multiplication") {
    PrimeField k(5);
    auto v1 = catalog(k, "V1").as_algebra();

    SECTION("basis products read off the tensor") {
        CHECK(vec_eq(k, v1.mul(v1.basis_vec(0), v1.basis_vec(0)), v1.basis_vec(1)));
        CHECK(vec_is_zero(k, v1.mul(v1.basis_vec(0), v1.basis_vec(1))));
    }

    SECTION("bilinearity: 0 * y = 0") {
        CHECK(vec_is_zero(k, v1.mul(zero_vec<K>(k, 2), v1.basis_vec(1))));
    }

    SECTION("exnetri: (e1 + e2)^2 = 2 e1") {
        auto w = catalog(k, "W").as_algebra();
        Vec<K> x{1, 1, 0};
        CHECK(vec_eq(k, w.square(x), Vec<K>{2, 0, 0}));
    }

    SECTION("dimension mismatch") {
        CHECK_THROWS_AS(v1.mul(Vec<K>{1, 2, 3}, v1.basis_vec(0)), DimensionMismatch);
    }
}

TEST_CASE("structure constants are symmetric and singly specified") {
    PrimeField k(5);
    Algebra<K> a(k, 3);
    Vec<K> prod{1, 2, 0};
    a.set_product(0, 2, prod);
    CHECK(a.sc(0, 2, 1) == 2);
    CHECK(a.sc(2, 0, 1) == 2);  // mirrored
    CHECK_THROWS_AS(a.set_product_coord(2, 0, 0, 1), InvalidInput);  // i > j rejected
    CHECK_THROWS_AS(Algebra<K>(k, 20), InvalidInput);                // dim limit
}

TEST_CASE("4-algebra identity check") {
    PrimeField k(5);

    SECTION("catalog examples") {
        CHECK(check_4algebra(catalog(k, "V1").as_algebra()));
        CHECK(check_4algebra(catalog(k, "V2").as_algebra()));
        CHECK(check_4algebra(catalog(k, "W").as_algebra()));
    }

    SECTION("idempotent generator violates") {
        Algebra<K> a(k, 1);
        a.set_product_coord(0, 0, 0, 1);  // e1^2 = e1
        CHECK_FALSE(check_4algebra(a));
    }

    SECTION("agrees with pointwise vanishing over GF(5), dims <= 3") {
        std::mt19937_64 rng(5);
        for (std::size_t n = 1; n <= 3; ++n)
            for (int trial = 0; trial < 60; ++trial) {
                auto a = support::random_commutative_algebra(k, n, rng, true);
                CHECK(check_4algebra(a) == support::pointwise_4algebra(a));
            }
    }
}

TEST_CASE("Bernstein and normal Bernstein identity checks") {
    PrimeField k(5);

    SECTION("A2 and the base field are Bernstein") {
        CHECK(check_bernstein(catalog(k, "A2").as_baric()));
        Algebra<K> one(k, 1);
        one.set_product_coord(0, 0, 0, 1);
        BaricAlgebra<K> field_itself(one, Vec<K>{1});
        CHECK(check_bernstein(field_itself));
        CHECK(check_normal_bernstein(field_itself));
    }

    SECTION("semidirect of V1 with the zero map is baric but not Bernstein") {
        auto v1 = catalog(k, "V1").as_algebra();
        auto b = semidirect(v1, zero_mat<K>(k, 2, 2));
        CHECK_FALSE(check_bernstein(b));
    }

    SECTION("constant Bernstein algebra is normal") {
        auto b0 = trivial_bernstein(k, 2, zero_mat<K>(k, 2, 2));
        CHECK(check_normal_bernstein(b0));
        CHECK(check_normal_bernstein(catalog(k, "A2").as_baric()));
    }

    SECTION("normality on semidirect products tracks the operator") {
        auto v1 = catalog(k, "V1").as_algebra();
        Mat<K> good(2, 2, 0);
        good.at(0, 0) = 1;  // the r = 0 member of the normal family [[1,0],[r,0]]
        CHECK(is_normal_bernstein_operator(v1, good));
        CHECK(check_normal_bernstein(semidirect(v1, good)));

        Mat<K> bad(2, 2, 0);
        bad.at(1, 1) = 1;  // Omega(e1^2) = Omega(e2) = e2 != 0
        CHECK_FALSE(is_normal_bernstein_operator(v1, bad));
        CHECK_FALSE(check_normal_bernstein(semidirect(v1, bad)));
    }

    SECTION("pointwise agreement on random baric algebras") {
        std::mt19937_64 rng(17);
        int tested = 0;
        while (tested < 25) {
            auto a = support::random_commutative_algebra(k, 2, rng, true);
            auto ws = find_weights(a);
            if (ws.empty()) continue;
            ++tested;
            BaricAlgebra<K> b(a, ws.front());
            CHECK(check_bernstein(b) == support::pointwise_bernstein(b));
        }
    }
}

TEST_CASE("normal Bernstein implies Bernstein") {
    PrimeField k(5);

    SECTION("on the catalog") {
        for (const auto& entry : catalog_bernstein_algebras(k))
            if (check_normal_bernstein(entry.as_baric())) CHECK(check_bernstein(entry.as_baric()));
    }

    SECTION("on 100 random normal Bernstein algebras") {
        // built as basis changes of semidirect products with normal operators,
        // which is what the structure theorem says they all are
        std::mt19937_64 rng(23);
        const char* kernels[] = {"V0", "V1", "abelian3"};
        int built = 0;
        while (built < 100) {
            auto v = catalog(k, kernels[rng() % 3]).as_algebra();
            auto nbos = enumerate_operators(v, OperatorKind::Normal);
            if (nbos.empty()) continue;
            auto b = semidirect(v, nbos[rng() % nbos.size()]);
            auto t = support::random_weight_preserving_change(k, b.dim(), rng);
            auto changed = apply_basis_change(b, t);
            REQUIRE(check_normal_bernstein(changed));
            CHECK(check_bernstein(changed));
            ++built;
        }
    }
}

TEST_CASE("weight validation at construction") {
    PrimeField k(5);
    auto v1 = catalog(k, "V1").as_algebra();
    CHECK_THROWS_AS(BaricAlgebra<K>(v1, zero_vec<K>(k, 2)), InvalidInput);
    CHECK_THROWS_AS(BaricAlgebra<K>(v1, Vec<K>{1, 0}), InvalidInput);  // not a morphism
    CHECK_THROWS_AS(BaricAlgebra<K>(v1, Vec<K>{1}), DimensionMismatch);
}

TEST_CASE("find_weights") {
    PrimeField k(5);

    SECTION("A2 has exactly one weight, (0, 1)") {
        auto ws = find_weights(catalog(k, "A2").as_baric().algebra());
        REQUIRE(ws.size() == 1);
        CHECK(vec_eq(k, ws[0], Vec<K>{0, 1}));
    }

    SECTION("abelian algebras have no weight") {
        CHECK(find_weights(Algebra<K>::abelian(k, 2)).empty());
    }

    SECTION("4-dim semidirect product of exnetri has exactly one weight") {
        auto w = catalog(k, "W").as_algebra();
        auto b = semidirect(w, catalog(k, "exnetri.Omega1").as_matrix());
        auto ws = find_weights(b.algebra());
        REQUIRE(ws.size() == 1);
        CHECK(vec_eq(k, ws[0], b.weight_vector()));
    }

    SECTION("over Q by eigenvalue elimination") {
        Rationals q;
        auto ws = find_weights(catalog(q, "A2").as_baric().algebra());
        REQUIRE(ws.size() == 1);
        CHECK(q.is_zero(ws[0][0]));
        CHECK(q.eq(ws[0][1], q.one()));
        CHECK(find_weights(Algebra<Rationals>::abelian(q, 3)).empty());
        CHECK_THROWS_AS(find_weights(Algebra<Rationals>::abelian(q, 5)), UnsupportedField);
    }

    SECTION("over Q with fractional and negative weight coordinates") {
        Rationals q;
        auto a2 = catalog(q, "A2").as_baric();
        for (const char* scale : {"1/2", "-3", "22/7"}) {
            auto t = identity_mat<Rationals>(q, 2);
            t.at(1, 1) = q.parse(scale);
            auto changed = apply_basis_change(a2, t);
            auto ws = find_weights(changed.algebra());
            REQUIRE(ws.size() == 1);
            CHECK(q.eq(ws[0][1], changed.weight_vector()[1]));
            CHECK(q.is_zero(ws[0][0]));
        }
    }

    SECTION("weight of the decomposition idempotent is 1") {
        for (const auto& entry : catalog_bernstein_algebras(k)) {
            const auto& b = entry.as_baric();
            auto d = decompose(b);
            CHECK(b.weight_of(d.idempotent) == 1);
            CHECK(vec_eq(k, b.algebra().square(d.idempotent), d.idempotent));
        }
    }
}

TEST_CASE("derived series and solvability") {
    PrimeField k(5);

    SECTION("V1: dims (2, 1, 0)") {
        CHECK(derived_series_dims(catalog(k, "V1").as_algebra()) ==
              std::vector<std::size_t>{2, 1, 0});
        CHECK(is_solvable(catalog(k, "V1").as_algebra()));
    }

    SECTION("exnetri: dims (3, 1, 0)") {
        CHECK(derived_series_dims(catalog(k, "W").as_algebra()) ==
              std::vector<std::size_t>{3, 1, 0});
    }

    SECTION("abelian: dims (n, 0)") {
        CHECK(derived_series_dims(Algebra<K>::abelian(k, 3)) == std::vector<std::size_t>{3, 0});
    }

    SECTION("an idempotent stops the descent") {
        Algebra<K> a(k, 1);
        a.set_product_coord(0, 0, 0, 1);
        CHECK_FALSE(is_solvable(a));
        CHECK(derived_series_dims(a) == std::vector<std::size_t>{1, 1});
    }

    SECTION("every enumerated 4-algebra at n = 2 is solvable") {
        std::mt19937_64 rng(31);
        for (int i = 0; i < 40; ++i) CHECK(is_solvable(support::random_4algebra(k, 2, rng)));
    }
}
