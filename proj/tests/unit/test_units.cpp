#include <catch2/catch_amalgamated.hpp>

#include <mwk/fields.hpp>
#include <mwk/rand_gen.hpp>
#include <mwk/units.hpp>

using namespace mwk;

TEST_CASE("unit group basics") {
    FormalUnit u = FormalUnit::ind("U");
    FormalUnit v = FormalUnit::ind("V");

    // U * U^-1 = 1
    CHECK(unit_mul(u, unit_inv(u)).is_one());
    // (-1) * (-1) = 1
    CHECK(unit_mul(FormalUnit::minus_one(), FormalUnit::minus_one()).is_one());
    // U * V has exponents {U:1, V:1}
    FormalUnit uv = unit_mul(u, v);
    CHECK(uv.exps == std::map<std::string, int>{{"U", 1}, {"V", 1}});
    CHECK_FALSE(uv.sign);
}

TEST_CASE("unit inverses") {
    CHECK(unit_inv(FormalUnit::ind("U")) == FormalUnit::ind("U", -1));
    CHECK(unit_inv(FormalUnit::minus_one()) == FormalUnit::minus_one());
    // inv(-U*V^2) = -U^-1*V^-2
    FormalUnit w = unit_mul(FormalUnit::minus_one(),
                            unit_mul(FormalUnit::ind("U"),
                                     FormalUnit::ind("V", 2)));
    FormalUnit wi = unit_inv(w);
    CHECK(wi.sign);
    CHECK(wi.exps == std::map<std::string, int>{{"U", -1}, {"V", -2}});
}

TEST_CASE("unit_cmp is the declared order") {
    FormalUnit m1 = FormalUnit::minus_one();
    FormalUnit u = FormalUnit::ind("U");
    FormalUnit v = FormalUnit::ind("V");
    CHECK(unit_cmp(m1, u) < 0);
    CHECK(unit_cmp(u, v) < 0);
    CHECK(unit_cmp(u, u) == 0);
    CHECK(unit_cmp(v, u) > 0);
    CHECK(unit_cmp(u, m1) > 0);
}

TEST_CASE("formal units form a group (random triples)") {
    Rng rng(42);
    ExprGenOptions opt;
    for (int i = 0; i < 500; ++i) {
        FormalUnit a = random_unit(rng, opt);
        FormalUnit b = random_unit(rng, opt);
        FormalUnit c = random_unit(rng, opt);
        CHECK(unit_mul(unit_mul(a, b), c) == unit_mul(a, unit_mul(b, c)));
        CHECK(unit_mul(a, FormalUnit::one()) == a);
        CHECK(unit_mul(a, unit_inv(a)).is_one());
        CHECK(unit_mul(a, b) == unit_mul(b, a));
    }
}

TEST_CASE("unit_cmp is a total order consistent with equality") {
    Rng rng(7);
    ExprGenOptions opt;
    for (int i = 0; i < 500; ++i) {
        FormalUnit a = random_unit(rng, opt);
        FormalUnit b = random_unit(rng, opt);
        FormalUnit c = random_unit(rng, opt);
        int ab = unit_cmp(a, b);
        CHECK((ab == 0) == (a == b));
        CHECK(unit_cmp(b, a) == -ab);
        if (ab < 0 && unit_cmp(b, c) < 0) CHECK(unit_cmp(a, c) < 0);
    }
}

TEST_CASE("unit rendering") {
    CHECK(render_unit(FormalUnit::one()) == "1");
    CHECK(render_unit(FormalUnit::minus_one()) == "-1");
    CHECK(render_unit(FormalUnit::ind("U")) == "U");
    CHECK(render_unit(unit_mul(FormalUnit::minus_one(), FormalUnit::ind("U"))) ==
          "-U");
    CHECK(render_unit(FormalUnit::ind("U", -1)) == "U^-1");
    CHECK(render_unit(unit_mul(FormalUnit::ind("U"), FormalUnit::ind("V", -2))) ==
          "U*V^-2");
}

TEST_CASE("variant-level unit arithmetic") {
    Unit f = FormalUnit::ind("U");
    Unit c = ConcreteUnit{"F5", 2};
    Unit c2 = ConcreteUnit{"F5", 3};
    Unit c3 = ConcreteUnit{"F3", 2};

    Unit prod = unit_mul(c, c2);
    CHECK(std::get<ConcreteUnit>(prod).value == 1); // 2*3 = 6 = 1 mod 5
    CHECK(std::get<ConcreteUnit>(unit_inv(c)).value == 3);

    CHECK_THROWS_AS(unit_mul(f, c), KindError);
    CHECK_THROWS_AS(unit_mul(c, c3), KindError);
}
