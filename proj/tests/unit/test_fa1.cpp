#include <catch2/catch_amalgamated.hpp>

#include <mwk/fa1.hpp>
#include <mwk/fields.hpp>
#include <mwk/rand_gen.hpp>

using namespace mwk;

namespace {
const FormalUnit U = FormalUnit::ind("U");
const FormalUnit V = FormalUnit::ind("V");
const FormalUnit W = FormalUnit::ind("W");
const FormalUnit M1 = FormalUnit::minus_one();

MwExpr mono(int eta, std::vector<FormalUnit> bs, Int c = 1) {
    MwMonomial m;
    m.eta = eta;
    m.brackets = std::move(bs);
    return MwExpr(m, c);
}

Fa1Element random_fa1(Rng& rng, const std::vector<std::string>& pool) {
    MwExpr alpha = random_degree2_expr(rng, pool, 3, 4);
    ExprGenOptions opt;
    opt.pool = pool;
    FormalUnit u = random_unit(rng, opt);
    return Fa1Element(alpha, u);
}
} // namespace

TEST_CASE("theta and gamma") {
    CHECK(theta(FormalUnit::one()) == fa1_identity());
    CHECK(fa1_equal(fa1_mul(theta(FormalUnit::one()), theta(FormalUnit::one())),
                    theta(FormalUnit::one())));
    CHECK(theta(U).k2.is_zero());
    CHECK(gamma(theta(U)) == U);
    CHECK(gamma(Fa1Element(mono(0, {U, V}), unit_mul(U, V))) == unit_mul(U, V));
}

TEST_CASE("group law") {
    // theta(U) theta(V) = <-1>[U][V] theta(UV)
    Fa1Element p = fa1_mul(theta(U), theta(V));
    CHECK(p.unit == unit_mul(U, V));
    CHECK(mw_equal(p.k2, mw_mul(gw_class(M1), mono(0, {U, V}))));

    // identity element
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        Fa1Element x = random_fa1(rng, {"U", "V", "W"});
        CHECK(fa1_equal(fa1_mul(fa1_identity(), x), x));
        CHECK(fa1_equal(fa1_mul(x, fa1_identity()), x));
        CHECK(fa1_equal(fa1_mul(x, fa1_inv(x)), fa1_identity()));
    }
}

TEST_CASE("group laws on random triples") {
    Rng rng(9);
    for (int i = 0; i < 60; ++i) {
        Fa1Element x = random_fa1(rng, {"U", "V"});
        Fa1Element y = random_fa1(rng, {"U", "W"});
        Fa1Element z = random_fa1(rng, {"V", "W"});
        CHECK(fa1_equal(fa1_mul(fa1_mul(x, y), z), fa1_mul(x, fa1_mul(y, z))));
        CHECK(gamma(fa1_mul(x, y)) == unit_mul(gamma(x), gamma(y)));
    }
}

TEST_CASE("the commutator of two sections") {
    Fa1Element c = fa1_commutator(theta(U), theta(V));
    CHECK(c.unit.is_one());
    // h(h-1)[U][V], whose normal form is h[U][V] = 2[U][V] + eta[-1][U][V]
    MwExpr target = mw_mul(h_expr(),
                           mw_mul(h_expr() - MwExpr(1), mono(0, {U, V})));
    CHECK(mw_equal(c.k2, target));
    CHECK(c.k2 == mono(0, {U, V}, 2) + mono(1, {M1, U, V}));

    // the two association routes agree
    Fa1Element route2 = fa1_mul(fa1_mul(theta(U), theta(V)),
                                fa1_inv(fa1_mul(theta(V), theta(U))));
    CHECK(fa1_equal(c, route2));

    CHECK(fa1_equal(fa1_commutator(theta(U), theta(U)), fa1_identity()));
}

TEST_CASE("centrality of the K2 part") {
    Rng rng(13);
    for (int i = 0; i < 40; ++i) {
        MwExpr alpha = random_degree2_expr(rng, {"U", "V", "W"}, 3, 4);
        Fa1Element central(alpha, FormalUnit::one());
        Fa1Element y = random_fa1(rng, {"U", "V", "W"});
        CHECK(fa1_equal(fa1_commutator(central, y), fa1_identity()));
        CHECK(gamma(fa1_commutator(y, central)).is_one());
    }
}

TEST_CASE("theta relation (ii)(b) holds") {
    // theta(U)^-1 theta(V) = [U^-1][-V] theta(U^-1 V), for all ordered pairs
    std::vector<FormalUnit> inds = {U, V, W};
    for (const auto& a : inds)
        for (const auto& b : inds) {
            Fa1Element lhs = fa1_mul(fa1_inv(theta(a)), theta(b));
            MwExpr k2 = normalize(
                mono(0, {unit_inv(a), unit_mul(M1, b)}));
            Fa1Element rhs(k2, unit_mul(unit_inv(a), b));
            CHECK(fa1_equal(lhs, rhs));
        }
}

TEST_CASE("theta relation (ii)(a) is refuted under the adopted cocycle") {
    // theta(U) theta(V)^-1 vs [-U][-V] theta(U^-1 V)^-1: the k2 difference
    // probes to a nonzero Witt class over R at positive assignments, so the
    // two sides differ in K_2^MW itself, not merely in normal form.
    Fa1Element lhs = fa1_mul(theta(U), fa1_inv(theta(V)));
    Fa1Element rhs = fa1_mul(
        Fa1Element(mono(0, {unit_mul(M1, U), unit_mul(M1, V)}),
                   FormalUnit::one()),
        fa1_inv(theta(unit_mul(unit_inv(U), V))));
    CHECK(lhs.unit == rhs.unit);
    CHECK_FALSE(fa1_equal(lhs, rhs));

    MwExpr diff = normalize(lhs.k2 - rhs.k2);
    FieldBackend r = FieldBackend::make("R");
    WittClass w = probe(diff, Assignment{{"U", 1}, {"V", 1}}, r);
    CHECK(w.signature == -4);
}

TEST_CASE("Morel 7.29(1): theta(U^-1)^-1 theta(U^-1 V) theta(V)^-1 = [U][V]") {
    Fa1Element prod = fa1_mul(
        fa1_mul(fa1_inv(theta(unit_inv(U))), theta(unit_mul(unit_inv(U), V))),
        fa1_inv(theta(V)));
    CHECK(prod.unit.is_one());
    CHECK(mw_equal(prod.k2, mono(0, {U, V})));
}

TEST_CASE("hk2_member") {
    // h(h-1)[U][V] is a member, with a verified witness
    MwExpr alpha = mw_mul(h_expr(),
                          mw_mul(h_expr() - MwExpr(1), mono(0, {U, V})));
    Hk2Result r = hk2_member(alpha);
    CHECK(r.member);
    CHECK(mw_equal(mw_mul(h_expr(), r.witness), alpha));

    // 0 is a member with witness 0
    Hk2Result rz = hk2_member(MwExpr());
    CHECK(rz.member);
    CHECK(rz.witness.is_zero());

    // [U][V] is not: the eta-free coefficient would need 2 b = 1
    CHECK_FALSE(hk2_member(mono(0, {U, V})).member);

    // degree guard
    CHECK_THROWS_AS(hk2_member(mono(0, {U})), DegreeError);

    // basis bound is reported, never silently false
    Hk2Options tight;
    tight.max_basis = 2;
    CHECK_THROWS_AS(hk2_member(alpha, {}, tight), BasisBound);
}

TEST_CASE("commutators land in h K_2^MW") {
    Rng rng(19);
    for (int i = 0; i < 25; ++i) {
        Fa1Element x = random_fa1(rng, {"U", "V"});
        Fa1Element y = random_fa1(rng, {"V", "W"});
        Fa1Element c = fa1_commutator(x, y);
        CHECK(c.unit.is_one());
        CHECK(hk2_member(c.k2).member);
    }
}
