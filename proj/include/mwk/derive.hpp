#pragma once

// Replays the named derivation chains line by line, machine-verifying each
// equality and citing the identity used.
//
// Note on lemma-hk2 step 2: the source chain for the commutator computation
// is sometimes printed with the misordered product <-1>[U][V] theta(UV) for
// theta(V)theta(U); that line contradicts the chain's own conclusion
// <-1>([U][V] - [V][U]).  The consistent line theta(V)theta(U) =
// <-1>[V][U] theta(VU) is what gets verified here.

#include <string>
#include <vector>

#include "hurewicz.hpp"
#include "parser.hpp"

namespace mwk {

struct DeriveStep {
    enum class Via {
        Check,         // eval both sides, compare
        HurewiczOfLhs, // compare H(eval(lhs)) with eval(rhs)
    };
    std::string lhs, rhs;
    std::string note;
    Via via = Via::Check;

    // filled by derive():
    bool ok = false;
    std::string lhs_nf, rhs_nf;

    DeriveStep(std::string l, std::string r, std::string n,
               Via v = Via::Check)
        : lhs(std::move(l)), rhs(std::move(r)), note(std::move(n)), via(v) {}
};

struct Derivation {
    std::string id;
    std::string title;
    std::vector<DeriveStep> steps;
    bool all_ok = true;
};

inline std::vector<std::string> derivation_ids() {
    return {"lemma-hk2", "lemma-explicit-h", "thm-fa1-ii"};
}

namespace detail {

inline Derivation derivation_template(const std::string& id) {
    Derivation d;
    d.id = id;
    if (id == "lemma-hk2") {
        d.title = "commutator subgroup of F(1): [theta(U),theta(V)] = h(h-1)[U][V]";
        d.steps = {
            {"theta(U)*theta(V)", "<-1>*[U]*[V]*theta(U*V)",
             "group law of the central extension"},
            {"theta(V)*theta(U)", "<-1>*[V]*[U]*theta(V*U)",
             "group law, arguments swapped"},
            {"theta(U)*theta(V)*theta(U)^-1*theta(V)^-1",
             "(<-1>*([U]*[V] - [V]*[U]))*theta(1)",
             "K_2^MW is central; the theta(UV) factors cancel"},
            {"<-1>*([U]*[V] - [V]*[U])", "[U]*[V]*(<-1> + <-1>^2)",
             "eps-commutation: [V][U] = -<-1>*[U][V]"},
            {"[U]*[V]*(<-1> + <-1>^2)", "h*(h-1)*[U]*[V]",
             "h = 1 + <-1>"},
        };
    } else if (id == "lemma-explicit-h") {
        d.title = "explicit Hurewicz formula: H([U][V] theta(W)) = eta[U^-1][V] + [W]";
        d.steps = {
            {"[U]*[V]*theta(W)",
             "theta(U^-1)^-1 * theta(U^-1*V) * theta(V)^-1 * theta(W)",
             "[U][V] = theta(U^-1)^-1 theta(U^-1 V) theta(V)^-1"},
            {"[U]*[V]*theta(W)", "-[U^-1] + [U^-1*V] - [V] + [W]",
             "H(theta(X)) = [X] and H is a homomorphism",
             DeriveStep::Via::HurewiczOfLhs},
            {"-[U^-1] + [U^-1*V] - [V] + [W]", "eta*[U^-1]*[V] + [W]",
             "[uv] = [u] + [v] + eta*[u][v]"},
        };
    } else if (id == "thm-fa1-ii") {
        d.title = "structure relations for theta";
        d.steps = {
            {"theta(U)*theta(V)^-1", "[-U]*[-V]*theta(U^-1*V)^-1",
             "relation (ii)(a) as stated"},
            {"theta(U)^-1*theta(V)", "[U^-1]*[-V]*theta(U^-1*V)",
             "relation (ii)(b)"},
        };
    } else {
        throw Error("unknown derivation id: " + id +
                    " (known: lemma-hk2, lemma-explicit-h, thm-fa1-ii)");
    }
    return d;
}

inline std::string render_value(const Value& v) {
    if (std::holds_alternative<MwExpr>(v))
        return render_mw(std::get<MwExpr>(v));
    return render_fa1(std::get<Fa1Element>(v));
}

} // namespace detail

inline Derivation derive(const std::string& id,
                         const NormalizeOptions& opt = {}) {
    Derivation d = detail::derivation_template(id);
    for (DeriveStep& step : d.steps) {
        Value lhs = eval_text(step.lhs, opt);
        Value rhs = eval_text(step.rhs, opt);
        if (step.via == DeriveStep::Via::HurewiczOfLhs) {
            const Fa1Element& x = std::get<Fa1Element>(lhs);
            K1Expr h = hurewicz(x, opt);
            step.lhs_nf = "H(" + render_fa1(x) + ") = " + render_mw(h);
            step.rhs_nf = render_mw(normalize(std::get<MwExpr>(rhs), nullptr, opt));
            step.ok = mw_equal(h, std::get<MwExpr>(rhs), opt);
        } else if (std::holds_alternative<Fa1Element>(lhs) &&
                   std::holds_alternative<Fa1Element>(rhs)) {
            const Fa1Element& a = std::get<Fa1Element>(lhs);
            const Fa1Element& b = std::get<Fa1Element>(rhs);
            step.lhs_nf = render_fa1(a);
            step.rhs_nf = render_fa1(b);
            step.ok = fa1_equal(a, b, opt);
        } else {
            const MwExpr& a = std::get<MwExpr>(lhs);
            const MwExpr& b = std::get<MwExpr>(rhs);
            step.lhs_nf = render_mw(normalize(a, nullptr, opt));
            step.rhs_nf = render_mw(normalize(b, nullptr, opt));
            step.ok = mw_equal(a, b, opt);
        }
        d.all_ok = d.all_ok && step.ok;
    }
    return d;
}

} // namespace mwk
