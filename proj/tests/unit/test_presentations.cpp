#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include <mwk/presentations.hpp>
#include <mwk/rand_gen.hpp>

using namespace mwk;

TEST_CASE("FinPresAbGroup structure") {
    // Z^2 / <(2,0),(0,3)> = Z/2 + Z/3 = Z/6 after SNF
    IntMatrix rels(2, 2);
    rels.at(0, 0) = 2;
    rels.at(1, 1) = 3;
    FinPresAbGroup g({"a", "b"}, rels);
    CHECK(g.is_finite());
    CHECK(g.order() == 6);
    CHECK(g.invariant_factors() == std::vector<Int>{6});

    // free group: no relations
    FinPresAbGroup f({"a", "b"}, IntMatrix(0, 2));
    CHECK_FALSE(f.is_finite());
    CHECK(f.structure() == "Z^2");

    // projection is a homomorphism into the canonical coordinates
    std::vector<Int> w1{1, 0}, w2{0, 1}, w12{1, 1};
    auto p1 = g.project(w1);
    auto p2 = g.project(w2);
    auto p12 = g.project(w12);
    REQUIRE(p1.size() == 1);
    Int sum = (p1[0] + p2[0]) % 6;
    CHECK(sum == p12[0]);
}

TEST_CASE("milnor_k2 vanishes for small finite fields") {
    for (int q : {3, 5, 7}) {
        FinPresAbGroup g = milnor_k2(q);
        INFO("q = " << q);
        CHECK(g.is_trivial());
        CHECK(g.order() == 1);
    }
}

TEST_CASE("milnor_k2 at q = 9") {
    FinPresAbGroup g = milnor_k2(9);
    CHECK(g.is_trivial());
}

TEST_CASE("milnor_k1 is the unit group") {
    for (int q : {3, 5, 7, 9}) {
        FinPresAbGroup g = milnor_k(q, 1);
        INFO("q = " << q);
        CHECK(g.is_finite());
        CHECK(g.order() == q - 1);
        CHECK(g.invariant_factors() == std::vector<Int>{q - 1});
    }
}

TEST_CASE("milnor_k2 is independent of relation enumeration order") {
    FinPresAbGroup base = milnor_k2(5);
    Rng rng(61);
    const IntMatrix& rels = base.rels();
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<std::size_t> perm(rels.rows);
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
        for (std::size_t i = perm.size(); i > 1; --i)
            std::swap(perm[i - 1],
                      perm[static_cast<std::size_t>(rng.range(0, static_cast<int>(i) - 1))]);
        IntMatrix shuffled(rels.rows, rels.cols);
        for (std::size_t i = 0; i < rels.rows; ++i)
            for (std::size_t j = 0; j < rels.cols; ++j)
                shuffled.at(i, j) = rels.at(perm[i], j);
        FinPresAbGroup g(base.gens(), shuffled);
        CHECK(g.invariant_factors() == base.invariant_factors());
    }
}

TEST_CASE("fundamental ideal powers") {
    // I^0 = W(F_q), order 4
    for (int q : {3, 5, 7}) {
        INFO("q = " << q);
        IdealPower w = fundamental_ideal_power(q, 0);
        CHECK(w.elements.size() == 4);
        CHECK(w.pres.order() == 4);
        // I has order 2
        IdealPower i1 = fundamental_ideal_power(q, 1);
        CHECK(i1.elements.size() == 2);
        CHECK(i1.pres.invariant_factors() == std::vector<Int>{2});
        // I^2 = 0
        IdealPower i2 = fundamental_ideal_power(q, 2);
        CHECK(i2.elements.size() == 1);
        CHECK(i2.pres.is_trivial());
        // I^3 = 0
        CHECK(fundamental_ideal_power(q, 3).pres.is_trivial());
    }
    // W(F_3) = Z/4 (q = 3 mod 4), W(F_5) = Z/2 + Z/2 (q = 1 mod 4)
    CHECK(fundamental_ideal_power(3, 0).pres.invariant_factors() ==
          std::vector<Int>{4});
    CHECK(fundamental_ideal_power(5, 0).pres.invariant_factors() ==
          std::vector<Int>{2, 2});
}

TEST_CASE("kmw groups over finite fields") {
    for (int q : {3, 5, 7}) {
        INFO("q = " << q);
        KmwGroup k2 = kmw_finite_field(q, 2);
        CHECK(k2.elems.size() == 1); // K^MW_2(F_q) = 0
        CHECK(k2.pres.is_trivial());

        KmwGroup k1 = kmw_finite_field(q, 1);
        CHECK(static_cast<int>(k1.elems.size()) == q - 1);
        CHECK(k1.pres.order() == q - 1);
    }
}

TEST_CASE("eta sequence exactness over finite fields") {
    for (int q : {3, 5, 7}) {
        INFO("q = " << q);
        ExactnessReport rep = eta_sequence_exactness_finite(q, 2);
        CHECK(rep.exact);
        CHECK(rep.milnor_order == 1);
        CHECK(rep.kmw_order == 1);
        CHECK(rep.h_kmw_order == 1);
        CHECK(rep.ker_eta_order == 1);
    }
}

TEST_CASE("eta sequence exactness in degree 1 is non-degenerate") {
    for (int q : {3, 5, 7}) {
        INFO("q = " << q);
        ExactnessReport rep = eta_sequence_exactness_finite(q, 1);
        CHECK(rep.exact);
        CHECK(rep.kmw_order == q - 1);
        // ker eta = h K^MW_1 = the squares, of order (q-1)/2
        CHECK(rep.ker_eta_order == (q - 1) / 2);
        CHECK(rep.h_kmw_order == (q - 1) / 2);
    }
}

TEST_CASE("degree 3 stays trivial") {
    ExactnessReport rep = eta_sequence_exactness_finite(3, 3);
    CHECK(rep.exact);
    CHECK(rep.kmw_order == 1);
}
