#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include <mwk/cli.hpp>
#include <mwk/parser.hpp>
#include <mwk/rand_gen.hpp>

using namespace mwk;

namespace {
const FormalUnit U = FormalUnit::ind("U");
const FormalUnit V = FormalUnit::ind("V");
const FormalUnit W = FormalUnit::ind("W");

MwExpr mono(int eta, std::vector<FormalUnit> bs, Int c = 1) {
    MwMonomial m;
    m.eta = eta;
    m.brackets = std::move(bs);
    return MwExpr(m, c);
}

int run(const std::vector<std::string>& args, std::string* out_text = nullptr) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    if (out_text) *out_text = out.str() + err.str();
    return code;
}
} // namespace

TEST_CASE("parsing the surface syntax") {
    // h*(h-1)*[U]*[V] with h desugared
    Value v = eval_text("h*(h-1)*[U]*[V]");
    REQUIRE(std::holds_alternative<MwExpr>(v));
    MwExpr expect = mw_mul(h_expr(),
                           mw_mul(h_expr() - MwExpr(1), mono(0, {U, V})));
    CHECK(std::get<MwExpr>(v) == expect);

    // eta*[U^-1]*[V] + [W]
    Value v2 = eval_text("eta*[U^-1]*[V] + [W]");
    MwExpr expect2 = normalize(mono(1, {unit_inv(U), V}) + mono(0, {W}));
    CHECK(std::get<MwExpr>(v2) == expect2);

    // adjacency means multiplication
    CHECK(std::get<MwExpr>(eval_text("[U][V]")) ==
          std::get<MwExpr>(eval_text("[U]*[V]")));
    CHECK(std::get<MwExpr>(eval_text("eta[-1][U]")) ==
          std::get<MwExpr>(eval_text("eta*[-1]*[U]")));

    // eps = -<-1>, <u> = 1 + eta[u]
    CHECK(std::get<MwExpr>(eval_text("eps")) == eps_expr());
    CHECK(std::get<MwExpr>(eval_text("<U>")) == gw_class(U));
    CHECK(std::get<MwExpr>(eval_text("h")) == h_expr());

    // theta makes an F(1) element
    Value v3 = eval_text("theta(U)*theta(V)");
    REQUIRE(std::holds_alternative<Fa1Element>(v3));
    CHECK(std::get<Fa1Element>(v3).unit == unit_mul(U, V));

    // unit literals
    CHECK(std::get<MwExpr>(eval_text("[-U]")) ==
          bracket(unit_mul(FormalUnit::minus_one(), U)));
    CHECK(std::get<MwExpr>(eval_text("[U*V^-2]")) ==
          bracket(unit_mul(U, FormalUnit::ind("V", -2))));
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse("[U] +"), ParseError);
    CHECK_THROWS_AS(parse("(1"), ParseError);
    CHECK_THROWS_AS(parse("U"), ParseError); // bare unit outside brackets
    CHECK_THROWS_AS(parse("[U"), ParseError);
    CHECK_THROWS_AS(parse("2 @ 3"), ParseError);
    try {
        parse("[U] + $");
    } catch (const ParseError& e) {
        CHECK(e.pos == 6);
    }
}

TEST_CASE("evaluation guards") {
    CHECK_THROWS_AS(eval_text("theta(U) + theta(V)"), Error);
    CHECK_THROWS_AS(eval_text("[U]^-1"), Error);
    // theta(U)^-2 is fine
    Value v = eval_text("theta(U)^-2");
    CHECK(std::get<Fa1Element>(v).unit == FormalUnit::ind("U", -2));
    // only degree-2 parts multiply into the group
    CHECK_THROWS_AS(eval_text("[U]*theta(V)"), DegreeError);
}

TEST_CASE("parse-render round trip on normal forms") {
    Rng rng(71);
    ExprGenOptions opt;
    for (int i = 0; i < 300; ++i) {
        MwExpr nf = normalize(random_expr(rng, opt));
        std::string text = render_mw(nf);
        Value v = eval_text(text);
        REQUIRE(std::holds_alternative<MwExpr>(v));
        CHECK(std::get<MwExpr>(v) == nf);
    }
}

TEST_CASE("cli check exit codes") {
    // commutator identity verifies
    CHECK(run({"check",
               "theta(U)*theta(V)*theta(U)^-1*theta(V)^-1",
               "=",
               "h*(h-1)*[U]*[V]*theta(1)"}) == 0);
    // distinct normal forms refute
    CHECK(run({"check", "[U]", "[V]"}) == 1);
    // eta*h = 0
    CHECK(run({"check", "eta*h", "0"}) == 0);
    // parse errors exit 2
    CHECK(run({"check", "[U", "[V]"}) == 2);
    CHECK(run({"nonsense-verb"}) == 2);
    // resource bound exits 3
    CHECK(run({"--term-bound", "2", "normalize",
               "[U*V*W]*[U*V*W]*[U*V*W]"}) == 3);
}

TEST_CASE("cli normalize and trace") {
    std::string text;
    CHECK(run({"normalize", "[U*V]"}, &text) == 0);
    CHECK(text == "[U] + [V] + eta*[U][V]\n");
    CHECK(run({"--trace", "normalize", "[V]*[U]"}, &text) == 0);
    CHECK(text.find("R4") != std::string::npos);
    CHECK(run({"--json", "normalize", "h"}, &text) == 0);
    CHECK(text.find("\"verdict\"") != std::string::npos);
    CHECK(text.find("\"eta\"") != std::string::npos);
}

TEST_CASE("cli derive") {
    CHECK(run({"derive", "lemma-hk2"}) == 0);
    CHECK(run({"derive", "lemma-explicit-h"}) == 0);
    CHECK(run({"derive", "unknown-id"}) == 2);
    // thm-fa1-ii: relation (a) is refuted under the adopted cocycle
    std::string text;
    CHECK(run({"derive", "thm-fa1-ii"}, &text) == 1);
    CHECK(text.find("REFUTED") != std::string::npos);
    CHECK(text.find("(2)") != std::string::npos);
}

TEST_CASE("cli hurewicz, member-hk2, commutator") {
    std::string text;
    CHECK(run({"hurewicz", "[U]*[V]*theta(W)"}, &text) == 0);
    CHECK(text.find("H = ") != std::string::npos);

    CHECK(run({"member-hk2", "h*(h-1)*[U]*[V]"}, &text) == 0);
    CHECK(text.find("witness") != std::string::npos);
    CHECK(run({"member-hk2", "[U]*[V]"}) == 1);

    CHECK(run({"commutator", "theta(U)", "theta(V)"}, &text) == 0);
    CHECK(text.find("gamma = 1") != std::string::npos);
    CHECK(text.find("yes") != std::string::npos);
}

TEST_CASE("cli probe and probe-compare") {
    std::string text;
    CHECK(run({"probe", "h", "--field", "R", "--trials", "10"}, &text) == 0);
    CHECK(text.find("signature 0") != std::string::npos);

    CHECK(run({"probe", "[U][V]", "--field", "R", "--assign", "U=-,V=-"},
              &text) == 0);
    CHECK(text.find("signature 4") != std::string::npos);

    CHECK(run({"probe-compare", "theta(U)*theta(V)",
               "(<-1>*[U]*[V])*theta(U*V)", "--field", "F5", "--trials",
               "50"}) == 0);
    CHECK(run({"probe", "[U][V]", "--field", "F4"}) == 2);
}

TEST_CASE("cli kmw and exactness") {
    std::string text;
    CHECK(run({"kmw", "--field", "F5", "--degree", "2"}, &text) == 0);
    CHECK(text.find("structure: 0") != std::string::npos);
    CHECK(run({"exactness", "--field", "F5"}, &text) == 0);
    CHECK(text.find("EXACT") != std::string::npos);
    CHECK(run({"--json", "exactness", "--field", "F3", "--degree", "1"},
              &text) == 0);
    CHECK(text.find("\"verified\"") != std::string::npos);
}
