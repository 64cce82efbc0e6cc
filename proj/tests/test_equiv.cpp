#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "test_support.hpp"

using namespace bernstein;
using support::K;

TEST_CASE("operator equivalence on exnetri.V") {
    PrimeField k(5);
    auto w = catalog(k, "W").as_algebra();
    auto om1 = catalog(k, "exnetri.Omega1").as_matrix();
    auto om2 = catalog(k, "exnetri.Omega2").as_matrix();
    auto om3 = catalog(k, "exnetri.Omega3").as_matrix();
    OperatorEquivalence<K> eq(w);

    SECTION("the first family collapses onto Omega1") {
        for (std::uint64_t a = 0; a < 5; ++a)
            for (std::uint64_t b = 0; b < 5; ++b) {
                auto witness = eq.find_witness(exnetri_family_one(k, a, b), om1);
                REQUIRE(witness);
                CHECK(is_morphism_witness(BernsteinDatum<K>(w, exnetri_family_one(k, a, b)),
                                          BernsteinDatum<K>(w, om1), *witness));
            }
    }

    SECTION("the three representatives are pairwise inequivalent") {
        CHECK_FALSE(eq.find_witness(om1, om2));
        CHECK_FALSE(eq.find_witness(om2, om3));
        CHECK_FALSE(eq.find_witness(om1, om3));
    }

    SECTION("the second family splits between Omega2 and Omega3") {
        for (std::uint64_t g = 0; g < 5; ++g)
            for (std::uint64_t d = 0; d < 5; ++d) {
                auto m = exnetri_family_two(k, g, d);
                bool to2 = static_cast<bool>(eq.find_witness(m, om2));
                bool to3 = static_cast<bool>(eq.find_witness(m, om3));
                CHECK(to2 != to3);
                CHECK(to3 == (d != 0));
            }
    }
}

TEST_CASE("equivalence is an equivalence relation") {
    PrimeField k(5);

    SECTION("class partition matches pairwise tests (full BO sets, dim 2)") {
        for (const char* name : {"V0", "V1", "V2"}) {
            auto v = catalog(k, name).as_algebra();
            auto ops = enumerate_operators(v, OperatorKind::Bernstein);
            auto classes = classify_operators(v);
            OperatorEquivalence<K> eq(v);
            std::map<std::vector<std::uint64_t>, std::size_t> class_of;
            for (std::size_t c = 0; c < classes.size(); ++c)
                for (const auto& m : classes[c].members) class_of[m.a] = c;
            for (const auto& a : ops)
                for (const auto& b : ops) {
                    bool same = class_of.at(a.a) == class_of.at(b.a);
                    CHECK(static_cast<bool>(eq.find_witness(a, b)) == same);
                }
        }
    }

    SECTION("full pairwise agreement with the partition on exnetri.V") {
        auto w = catalog(k, "W").as_algebra();
        auto ops = enumerate_operators(w, OperatorKind::Bernstein);
        auto classes = classify_operators(w);
        OperatorEquivalence<K> eq(w);
        std::map<std::vector<std::uint64_t>, std::size_t> class_of;
        for (std::size_t c = 0; c < classes.size(); ++c)
            for (const auto& m : classes[c].members) class_of[m.a] = c;
        for (const auto& a : ops)
            for (const auto& b : ops)
                CHECK(static_cast<bool>(eq.find_witness(a, b)) ==
                      (class_of.at(a.a) == class_of.at(b.a)));
    }
}

TEST_CASE("classification of operators") {
    PrimeField k(5);

    SECTION("exnetri.V: three classes of sizes 5, 25, 20") {
        auto w = catalog(k, "W").as_algebra();
        auto classes = classify_operators(w);
        REQUIRE(classes.size() == 3);
        CHECK(classes[0].members.size() == 5);
        CHECK(classes[1].members.size() == 25);
        CHECK(classes[2].members.size() == 20);
        // representatives are the named matrices themselves
        CHECK(mat_eq(k, classes[0].representative, catalog(k, "exnetri.Omega2").as_matrix()));
        CHECK(mat_eq(k, classes[1].representative, catalog(k, "exnetri.Omega1").as_matrix()));
        CHECK(mat_eq(k, classes[2].representative, catalog(k, "exnetri.Omega3").as_matrix()));
    }

    SECTION("class members carry validated witnesses from the representative") {
        auto w = catalog(k, "W").as_algebra();
        for (const auto& cls : classify_operators(w)) {
            BernsteinDatum<K> rep(w, cls.representative);
            for (std::size_t i = 0; i < cls.members.size(); ++i)
                CHECK(is_morphism_witness(rep, BernsteinDatum<K>(w, cls.members[i]),
                                          cls.witnesses[i]));
        }
    }

    SECTION("abelian kernels: n + 1 classes distinguished by rank") {
        for (std::size_t n = 1; n <= 2; ++n) {
            auto classes = classify_operators(Algebra<K>::abelian(k, n));
            REQUIRE(classes.size() == n + 1);
            std::set<std::size_t> ranks;
            for (const auto& c : classes) {
                ranks.insert(rank(k, c.representative));
                for (const auto& m : c.members) CHECK(rank(k, m) == rank(k, c.representative));
            }
            CHECK(ranks.size() == n + 1);
        }
    }

    SECTION("abelian dim-2 class sizes are 1, 30, 1") {
        auto classes = classify_operators(Algebra<K>::abelian(k, 2));
        REQUIRE(classes.size() == 3);
        CHECK(classes[0].members.size() == 1);   // zero map
        CHECK(classes[1].members.size() == 30);  // rank-1 idempotents
        CHECK(classes[2].members.size() == 1);   // identity
    }

    SECTION("V1: two classes, split by the diagonal") {
        auto v1 = catalog(k, "V1").as_algebra();
        auto classes = classify_operators(v1);
        REQUIRE(classes.size() == 2);
        CHECK(classes[0].members.size() == 5);
        CHECK(classes[1].members.size() == 5);
        for (const auto& m : classes[0].members) CHECK(m.at(0, 0) != classes[1].members[0].at(0, 0));
    }

    SECTION("normal variant classifies within NBO") {
        auto v1 = catalog(k, "V1").as_algebra();
        auto classes = classify_operators(v1, OperatorKind::Normal);
        REQUIRE(classes.size() == 1);
        CHECK(classes[0].members.size() == 5);
    }

    SECTION("classes correspond to isomorphism types of semidirect products") {
        auto w = catalog(k, "W").as_algebra();
        auto classes = classify_operators(w);
        std::mt19937_64 rng(79);
        for (std::size_t i = 0; i < classes.size(); ++i) {
            auto bi = semidirect(w, classes[i].representative);
            for (std::size_t j = 0; j < classes.size(); ++j) {
                auto bj = semidirect(w, classes[j].representative);
                CHECK(static_cast<bool>(is_isomorphic(bi, bj)) == (i == j));
            }
            const auto& member = classes[i].members[rng() % classes[i].members.size()];
            CHECK(is_isomorphic(bi, semidirect(w, member)));
        }
    }

    SECTION("non-isomorphic kernels give non-isomorphic Bernstein algebras") {
        auto v0 = catalog(k, "V0").as_algebra();
        auto v1 = catalog(k, "V1").as_algebra();
        auto v2 = catalog(k, "V2").as_algebra();
        auto b0 = semidirect(v0, zero_mat<K>(k, 2, 2));
        auto b1 = semidirect(v1, enumerate_operators(v1, OperatorKind::Bernstein).front());
        auto b2 = semidirect(v2, enumerate_operators(v2, OperatorKind::Bernstein).front());
        CHECK_FALSE(is_isomorphic(b0, b1));
        CHECK_FALSE(is_isomorphic(b0, b2));
        CHECK_FALSE(is_isomorphic(b1, b2));
    }

    SECTION("the six 3-dimensional types, assembled across all three kernels") {
        // kernels V0, V1, V2 contribute 3 + 2 + 1 operator classes; the six
        // semidirect products are pairwise non-isomorphic
        std::vector<BaricAlgebra<K>> types;
        for (const char* name : {"V0", "V1", "V2"}) {
            auto v = catalog(k, name).as_algebra();
            for (const auto& cls : classify_operators(v))
                types.push_back(semidirect(v, cls.representative));
        }
        REQUIRE(types.size() == 6);
        for (std::size_t i = 0; i < types.size(); ++i)
            for (std::size_t j = 0; j < types.size(); ++j)
                CHECK(static_cast<bool>(is_isomorphic(types[i], types[j])) == (i == j));
    }
}

TEST_CASE("census of all 2-dimensional baric algebras over GF(5)") {
    // all 5^6 commutative multiplications on k^2; a Bernstein structure exists
    // on 144 of them, 120 isomorphic to A1 and 24 to A2
    PrimeField k(5);
    std::size_t bernstein_count = 0, type_a1 = 0, type_a2 = 0;
    std::vector<std::uint64_t> digits(6, 0);
    do {
        Algebra<K> a(k, 2);
        a.set_product_coord(0, 0, 0, digits[0]);
        a.set_product_coord(0, 0, 1, digits[1]);
        a.set_product_coord(0, 1, 0, digits[2]);
        a.set_product_coord(0, 1, 1, digits[3]);
        a.set_product_coord(1, 1, 0, digits[4]);
        a.set_product_coord(1, 1, 1, digits[5]);
        auto weights = find_weights(a);
        std::size_t bernstein_weights = 0;
        for (const auto& w : weights) {
            BaricAlgebra<K> b(a, w);
            if (!check_bernstein(b)) continue;
            ++bernstein_weights;
            auto d = decompose(b);
            (rank(k, d.omega) == 0 ? type_a1 : type_a2) += 1;
        }
        // a Bernstein algebra has a unique weight
        if (bernstein_weights > 0) CHECK(weights.size() == 1);
        bernstein_count += bernstein_weights;
    } while (next_tuple(5, digits));
    CHECK(bernstein_count == 144);
    CHECK(type_a1 == 120);
    CHECK(type_a2 == 24);

    // spot-check the rank buckets against the full isomorphism test
    auto a1 = catalog(k, "A1").as_baric();
    auto a2 = catalog(k, "A2").as_baric();
    CHECK(is_isomorphic(trivial_bernstein(k, 1, zero_mat<K>(k, 1, 1)), a1));
    CHECK(is_isomorphic(trivial_bernstein(k, 1, identity_mat<K>(k, 1)), a2));
    CHECK_FALSE(is_isomorphic(a1, a2));
}

TEST_CASE("dot-similarity") {
    PrimeField k(5);

    SECTION("on an abelian algebra it is plain matrix similarity") {
        auto v = Algebra<K>::abelian(k, 2);
        OperatorEquivalence<K> eq(v);
        auto idems = enumerate_operators(v, OperatorKind::Bernstein);
        std::mt19937_64 rng(83);
        for (int i = 0; i < 40; ++i) {
            const auto& a = idems[rng() % idems.size()];
            const auto& b = idems[rng() % idems.size()];
            CHECK(static_cast<bool>(eq.find_witness(a, b, false)) == (rank(k, a) == rank(k, b)));
        }
        // arbitrary endomorphisms, conjugacy decided by brute force over GL(2,5)
        auto conjugate = [&](const Mat<K>& a, const Mat<K>& b) {
            bool found = false;
            for_each_algebra_map(v, v, true, kDefaultBudget, [&](const Mat<K>& f) {
                if (mat_eq(k, mat_mul(k, mat_mul(k, f, a), *inverse(k, f)), b)) {
                    found = true;
                    return false;
                }
                return true;
            });
            return found;
        };
        for (int i = 0; i < 12; ++i) {
            auto a = support::random_matrix(k, 2, rng);
            auto b = support::random_matrix(k, 2, rng);
            CHECK(static_cast<bool>(eq.find_witness(a, b, false)) == conjugate(a, b));
        }
    }

    SECTION("reflexive via (0, I); implied by equivalence") {
        auto w = catalog(k, "W").as_algebra();
        auto ops = enumerate_operators(w, OperatorKind::Bernstein);
        OperatorEquivalence<K> eq(w);
        std::mt19937_64 rng(89);
        for (int i = 0; i < 30; ++i) {
            const auto& a = ops[rng() % ops.size()];
            const auto& b = ops[rng() % ops.size()];
            CHECK(eq.find_witness(a, a, false));
            if (eq.find_witness(a, b, true)) CHECK(eq.find_witness(a, b, false));
        }
    }

    SECTION("Omega2 and Omega3 are not even dot-similar (frozen by search)") {
        auto w = catalog(k, "W").as_algebra();
        CHECK_FALSE(dot_similar(w, catalog(k, "exnetri.Omega2").as_matrix(),
                                catalog(k, "exnetri.Omega3").as_matrix()));
        CHECK_FALSE(are_equivalent(w, catalog(k, "exnetri.Omega2").as_matrix(),
                                   catalog(k, "exnetri.Omega3").as_matrix()));
    }
}

TEST_CASE("automorphism groups") {
    PrimeField k(5);
    auto w = catalog(k, "W").as_algebra();

    SECTION("orders for the exnetri data: 80, 80, 20") {
        std::uint64_t expected[] = {80, 80, 20};
        const char* names[] = {"exnetri.Omega1", "exnetri.Omega2", "exnetri.Omega3"};
        for (int i = 0; i < 3; ++i) {
            BernsteinDatum<K> d(w, catalog(k, names[i]).as_matrix());
            CHECK(automorphism_group(d).order() == expected[i]);
        }
    }

    SECTION("group structures: twisted k x k* x k*, Aut_Alg, affine k x k*") {
        // Omega1: elements ((0,0,v3), f_{a,0,c}) composing as
        // (v3, a, c)(v3', a', c') = (v3 + v3' c, aa', cc')
        BernsteinDatum<K> d1(w, catalog(k, "exnetri.Omega1").as_matrix());
        auto g1 = automorphism_group(d1);
        for (const auto& e : g1.elements) {
            CHECK(e.v[0] == 0);
            CHECK(e.v[1] == 0);
            CHECK(e.f.at(2, 1) == 0);
        }
        for (const auto& x : g1.elements)
            for (const auto& y : g1.elements) {
                auto z = aut_compose(k, x, y);
                CHECK(z.v[2] == k.add(x.v[2], k.mul(y.v[2], x.f.at(2, 2))));
                CHECK(z.f.at(0, 0) == k.mul(x.f.at(0, 0), y.f.at(0, 0)));
                CHECK(z.f.at(2, 2) == k.mul(x.f.at(2, 2), y.f.at(2, 2)));
            }

        // Omega2: the projection (v, f) -> f is a group isomorphism onto Aut_Alg
        BernsteinDatum<K> d2(w, catalog(k, "exnetri.Omega2").as_matrix());
        auto g2 = automorphism_group(d2);
        auto aut_alg = algebra_automorphisms(w);
        std::set<std::vector<std::uint64_t>> fs;
        for (const auto& e : g2.elements) {
            CHECK(vec_is_zero(k, e.v));
            fs.insert(e.f.a);
        }
        CHECK(fs.size() == aut_alg.size());

        // Omega3: elements ((v1,0,0), f_{a,-2v1,a}) composing by the affine
        // law (v + v'a, aa'); nonabelian of order 20
        BernsteinDatum<K> d3(w, catalog(k, "exnetri.Omega3").as_matrix());
        auto g3 = automorphism_group(d3);
        bool abelian3 = true;
        for (const auto& e : g3.elements) {
            CHECK(e.v[1] == 0);
            CHECK(e.v[2] == 0);
            CHECK(e.f.at(0, 0) == e.f.at(2, 2));
            CHECK(e.f.at(2, 1) == k.neg(k.mul(2, e.v[0])));
        }
        for (const auto& x : g3.elements)
            for (const auto& y : g3.elements) {
                auto z = aut_compose(k, x, y);
                CHECK(z.v[0] == k.add(x.v[0], k.mul(y.v[0], x.f.at(0, 0))));
                if (!(aut_compose(k, x, y) == aut_compose(k, y, x))) abelian3 = false;
            }
        CHECK_FALSE(abelian3);
    }

    SECTION("group axioms hold on every catalog datum") {
        // the three operators on exnetri.V plus the data of A1, A2, A3
        std::vector<BernsteinDatum<K>> data;
        for (const char* nm : {"exnetri.Omega1", "exnetri.Omega2", "exnetri.Omega3"})
            data.emplace_back(w, catalog(k, nm).as_matrix());
        data.emplace_back(Algebra<K>::abelian(k, 1), zero_mat<K>(k, 1, 1));
        data.emplace_back(Algebra<K>::abelian(k, 1), identity_mat<K>(k, 1));
        data.emplace_back(Algebra<K>::abelian(k, 2), identity_mat<K>(k, 2));

        std::mt19937_64 rng(97);
        auto key = [](const AutGroupElement<K>& e) {
            auto v = e.f.a;
            v.insert(v.end(), e.v.begin(), e.v.end());
            return v;
        };
        for (const auto& d : data) {
            auto g = automorphism_group(d);
            std::size_t n = d.algebra.dim();
            std::set<std::vector<std::uint64_t>> elems;
            for (const auto& e : g.elements) elems.insert(key(e));
            REQUIRE(elems.size() == g.order());
            CHECK(elems.count(key(aut_identity(k, n))) == 1);
            for (const auto& a : g.elements) CHECK(elems.count(key(aut_invert(k, a))) == 1);
            if (g.order() <= 1000) {  // closure on all pairs, else sampled
                for (const auto& a : g.elements)
                    for (const auto& b : g.elements)
                        CHECK(elems.count(key(aut_compose(k, a, b))) == 1);
            } else {
                for (int i = 0; i < 2000; ++i) {
                    const auto& a = g.elements[rng() % g.order()];
                    const auto& b = g.elements[rng() % g.order()];
                    CHECK(elems.count(key(aut_compose(k, a, b))) == 1);
                }
            }
            for (int i = 0; i < 200; ++i) {
                const auto& a = g.elements[rng() % g.order()];
                const auto& b = g.elements[rng() % g.order()];
                const auto& c = g.elements[rng() % g.order()];
                CHECK(aut_compose(k, aut_compose(k, a, b), c) ==
                      aut_compose(k, a, aut_compose(k, b, c)));
            }
        }
    }

    SECTION("theta embeds the group into the Bernstein automorphisms") {
        BernsteinDatum<K> d(w, catalog(k, "exnetri.Omega3").as_matrix());
        auto b = semidirect(w, d.omega);
        auto g = automorphism_group(d);
        for (const auto& e : g.elements)
            CHECK(is_baric_iso_matrix(b, b, theta_matrix(k, e)));
        // homomorphism property on all pairs
        for (const auto& x : g.elements)
            for (const auto& y : g.elements)
                CHECK(mat_eq(k, theta_matrix(k, aut_compose(k, x, y)),
                             mat_mul(k, theta_matrix(k, x), theta_matrix(k, y))));
    }

    SECTION("theta is onto: independent morphism counts agree across the catalog") {
        std::vector<BernsteinDatum<K>> data;
        for (const char* nm : {"exnetri.Omega1", "exnetri.Omega2", "exnetri.Omega3"})
            data.emplace_back(w, catalog(k, nm).as_matrix());
        data.emplace_back(Algebra<K>::abelian(k, 1), zero_mat<K>(k, 1, 1));
        data.emplace_back(Algebra<K>::abelian(k, 1), identity_mat<K>(k, 1));
        data.emplace_back(Algebra<K>::abelian(k, 2), identity_mat<K>(k, 2));
        for (const auto& d : data) {
            std::size_t invertible = 0;
            for (const auto& m : enumerate_morphisms(d, d))
                if (is_invertible(k, m.f)) ++invertible;
            CHECK(invertible == automorphism_group(d).order());
        }
    }
}
