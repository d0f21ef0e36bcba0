#pragma once

// The rewrite system that computes normal forms in Milnor-Witt K-theory of a
// generic field.  Generators are eta and the symbols [u] for formal units u;
// the oriented rules are the relations of the graded ring as a field-free
// calculus (the Steinberg relation needs the additive structure and is not a
// generic rule; its atomic consequence enters as R5):
//
//   R1  [u*v]        -> [u] + [v] + eta[u][v]     (peel the least factor)
//   R2  [1]          -> 0
//   R7  [x^-1]       -> -[x] - eta[x][-1]         (x a single indeterminate)
//   R4  [u][v]       -> -(1 + eta[-1]) [v][u]     (adjacent, out of order)
//   R5  [x][x]       -> [x][-1]                   (x an indeterminate)
//   R6  eta^2 [-1]   -> -2 eta                    (inside a monomial)
//   R8  eta [-1][-1] -> -2 [-1]                   (from [1] = [(-1)^2] = 0)
//
// eta is central, so each monomial carries a single eta power.  Rules apply
// per monomial, leftmost site first, structural rules (R1/R2/R7) before the
// sorting rule R4, then R5, R6, R8.  Every rule strictly decreases the
// lexicographic measure (non-atomic bracket weight, repeated-indeterminate
// count, inversion count, reducible [-1] mass), so normalization terminates;
// a configurable budget still guards against pathological growth.
//
// Normal-form monomials: every bracket is [-1] or a plain indeterminate,
// brackets sorted with the [-1]s first, no repeated indeterminate,
// eta >= 2 implies no [-1] entry, eta == 1 implies at most one.

#include <algorithm>
#include <optional>
#include <utility>

#include "mw_expr.hpp"

namespace mwk {

enum class Rule { R1, R2, R4, R5, R6, R7, R8 };

inline const char* rule_name(Rule r) {
    switch (r) {
        case Rule::R1: return "R1";
        case Rule::R2: return "R2";
        case Rule::R4: return "R4";
        case Rule::R5: return "R5";
        case Rule::R6: return "R6";
        case Rule::R7: return "R7";
        case Rule::R8: return "R8";
    }
    return "?";
}

// The identity each rule is an instance of, for traces and derivations.
inline const char* rule_equation(Rule r) {
    switch (r) {
        case Rule::R1: return "[u*v] = [u] + [v] + eta*[u][v]";
        case Rule::R2: return "[1] = 0";
        case Rule::R4: return "[u][v] = -(1 + eta*[-1])*[v][u]  (eps-commutation)";
        case Rule::R5: return "[x][x] = [x][-1]";
        case Rule::R6: return "eta^2*[-1] = -2*eta  (from eta*h = 0)";
        case Rule::R7: return "[x^-1] = -[x] - eta*[x][-1]";
        case Rule::R8: return "eta*[-1][-1] = -2*[-1]  (from [1] = [(-1)*(-1)] = 0)";
    }
    return "";
}

struct Redex {
    Rule rule;
    std::size_t site;
};

inline std::optional<Redex> find_redex(const MwMonomial& m) {
    const auto& b = m.brackets;
    // structural pass: first non-atomic bracket decides its own rule
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i].is_one()) return Redex{Rule::R2, i};
        if (b[i].is_inverse_atom()) return Redex{Rule::R7, i};
        if (!b[i].is_atom()) return Redex{Rule::R1, i};
    }
    for (std::size_t i = 0; i + 1 < b.size(); ++i)
        if (unit_cmp(b[i], b[i + 1]) > 0) return Redex{Rule::R4, i};
    for (std::size_t i = 0; i + 1 < b.size(); ++i)
        if (b[i].is_indeterminate() && b[i] == b[i + 1])
            return Redex{Rule::R5, i};
    if (m.eta >= 1) {
        std::size_t minus_ones = 0;
        std::size_t first = b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            if (b[i].is_minus_one()) {
                if (first == b.size()) first = i;
                ++minus_ones;
            }
        if (m.eta >= 2 && minus_ones >= 1) return Redex{Rule::R6, first};
        if (minus_ones >= 2) return Redex{Rule::R8, first};
    }
    return std::nullopt;
}

// Expands one rule application at the given site; the result is the exact
// equal of the input monomial (coefficient 1).
inline MwExpr apply_redex(const MwMonomial& m, const Redex& rdx) {
    MwExpr out;
    const std::size_t i = rdx.site;
    switch (rdx.rule) {
        case Rule::R2:
            return out; // 0
        case Rule::R1: {
            const FormalUnit& w = m.brackets[i];
            // least factor: -1 if the sign is set, else x^{sgn e} for the
            // least-named indeterminate x
            FormalUnit f, rest = w;
            if (w.sign) {
                f = FormalUnit::minus_one();
                rest.sign = false;
            } else {
                auto it = w.exps.begin();
                int step = it->second > 0 ? 1 : -1;
                f = FormalUnit::ind(it->first, step);
                if (it->second == step)
                    rest.exps.erase(it->first);
                else
                    rest.exps[it->first] = it->second - step;
            }
            MwMonomial a = m, b = m, c = m;
            a.brackets[i] = f;
            b.brackets[i] = rest;
            c.eta += 1;
            c.brackets[i] = f;
            c.brackets.insert(c.brackets.begin() + i + 1, rest);
            out.add_term(a, 1);
            out.add_term(b, 1);
            out.add_term(c, 1);
            return out;
        }
        case Rule::R7: {
            const std::string& x = m.brackets[i].exps.begin()->first;
            MwMonomial a = m, b = m;
            a.brackets[i] = FormalUnit::ind(x);
            b.eta += 1;
            b.brackets[i] = FormalUnit::ind(x);
            b.brackets.insert(b.brackets.begin() + i + 1,
                              FormalUnit::minus_one());
            out.add_term(a, -1);
            out.add_term(b, -1);
            return out;
        }
        case Rule::R4: {
            MwMonomial a = m;
            std::swap(a.brackets[i], a.brackets[i + 1]);
            MwMonomial b = a;
            b.eta += 1;
            b.brackets.insert(b.brackets.begin(), FormalUnit::minus_one());
            out.add_term(a, -1);
            out.add_term(b, -1);
            return out;
        }
        case Rule::R5: {
            MwMonomial a = m;
            a.brackets[i + 1] = FormalUnit::minus_one();
            out.add_term(a, 1);
            return out;
        }
        case Rule::R6:
        case Rule::R8: {
            MwMonomial a = m;
            a.eta -= 1;
            a.brackets.erase(a.brackets.begin() + i);
            out.add_term(a, -2);
            return out;
        }
    }
    return out;
}

struct NormalizeOptions {
    std::size_t max_terms = 1u << 18;
    std::size_t max_steps = 1u << 22;
};

struct TraceStep {
    Rule rule;
    std::size_t site;
    MwMonomial redex;
    MwExpr before;
    MwExpr after;
};

// Replaying the steps from the first `before` yields the last `after`:
// step k+1's before equals step k's after.
struct RewriteTrace {
    std::vector<TraceStep> steps;
};

inline MwExpr normalize(const MwExpr& e, RewriteTrace* trace = nullptr,
                        const NormalizeOptions& opt = {}) {
    MwExpr cur = e;
    std::size_t steps = 0;
    while (true) {
        const MwMonomial* target = nullptr;
        std::optional<Redex> rdx;
        for (const auto& [m, c] : cur.terms()) {
            rdx = find_redex(m);
            if (rdx) {
                target = &m;
                break;
            }
        }
        if (!target) return cur;
        if (++steps > opt.max_steps)
            throw ResourceLimit("normalize: step budget exceeded");
        MwMonomial m = *target;
        Int coeff = cur.terms().at(m);
        MwExpr before;
        if (trace) before = cur;
        cur.add_term(m, -coeff);
        MwExpr expansion = apply_redex(m, *rdx);
        for (const auto& [mm, cc] : expansion.terms())
            cur.add_term(mm, coeff * cc);
        if (cur.size() > opt.max_terms)
            throw ResourceLimit("normalize: term budget exceeded");
        if (trace)
            trace->steps.push_back(
                TraceStep{rdx->rule, rdx->site, m, std::move(before), cur});
    }
}

inline bool is_normal(const MwExpr& e) {
    for (const auto& [m, c] : e.terms())
        if (find_redex(m)) return false;
    return true;
}

inline MwExpr mw_mul(const MwExpr& a, const MwExpr& b,
                     const NormalizeOptions& opt = {}) {
    return normalize(concat_product(a, b), nullptr, opt);
}

inline bool mw_equal(const MwExpr& a, const MwExpr& b,
                     const NormalizeOptions& opt = {}) {
    return normalize(a - b, nullptr, opt).is_zero();
}

inline MwExpr mw_pow(const MwExpr& a, int n, const NormalizeOptions& opt = {}) {
    if (n < 0) throw Error("mw_pow: negative power of an expression");
    MwExpr r(1);
    for (int i = 0; i < n; ++i) r = mw_mul(r, a, opt);
    return r;
}

// [u], fully expanded
inline MwExpr bracket(const FormalUnit& u) {
    MwMonomial m;
    m.brackets.push_back(u);
    return normalize(MwExpr(m));
}

inline MwExpr eta_expr(int k = 1) {
    MwMonomial m;
    m.eta = k;
    return MwExpr(m);
}

// <u> = 1 + eta[u]
inline MwExpr gw_class(const FormalUnit& u) {
    MwMonomial m;
    m.eta = 1;
    m.brackets.push_back(u);
    MwExpr r(1);
    r += MwExpr(m);
    return normalize(r);
}

// h = 1 + <-1> = 2 + eta[-1]
inline MwExpr h_expr() {
    MwExpr r(2);
    MwMonomial m;
    m.eta = 1;
    m.brackets.push_back(FormalUnit::minus_one());
    r += MwExpr(m);
    return r;
}

// eps = -<-1>
inline MwExpr eps_expr() { return -gw_class(FormalUnit::minus_one()); }

// A pure symbol product [x_1]...[x_n] over (possibly composite) units,
// with an integer coefficient.
struct SymbolTerm {
    Int coeff;
    std::vector<FormalUnit> symbols;
};

// Re-expresses a homogeneous degree-n expression (n >= 1) as an integer
// combination of eta-free length-n symbol products, by absorbing each eta
// into the leading bracket pair via eta[u][v] = [uv] - [u] - [v].
inline std::vector<SymbolTerm> to_symbol_form(const MwExpr& e, int n,
                                              const NormalizeOptions& opt = {}) {
    if (n < 1) throw DegreeError("to_symbol_form: degree must be >= 1");
    MwExpr nf = normalize(e, nullptr, opt);
    if (!nf.is_homogeneous(n))
        throw DegreeError("to_symbol_form: expression not homogeneous of degree " +
                          std::to_string(n));
    std::map<std::vector<FormalUnit>, Int> acc;
    std::map<MwMonomial, Int> work(nf.terms().begin(), nf.terms().end());
    while (!work.empty()) {
        auto it = work.begin();
        MwMonomial m = it->first;
        Int c = it->second;
        work.erase(it);
        if (c == 0) continue;
        if (m.eta == 0) {
            auto [pos, inserted] = acc.emplace(m.brackets, c);
            if (!inserted) pos->second += c;
            continue;
        }
        // degree n >= 1 and eta >= 1 force at least two brackets
        MwMonomial a = m, b = m, d = m;
        a.eta -= 1;
        b.eta -= 1;
        d.eta -= 1;
        a.brackets.erase(a.brackets.begin());
        a.brackets[0] = unit_mul(m.brackets[0], m.brackets[1]);
        b.brackets.erase(b.brackets.begin() + 1);
        d.brackets.erase(d.brackets.begin());
        auto push = [&work](const MwMonomial& mm, const Int& cc) {
            auto [pos, inserted] = work.emplace(mm, cc);
            if (!inserted) pos->second += cc;
        };
        push(a, c);
        push(b, -c);
        push(d, -c);
    }
    std::vector<SymbolTerm> out;
    for (auto& [sym, c] : acc)
        if (c != 0) out.push_back(SymbolTerm{c, sym});
    return out;
}

inline MwExpr recombine(const std::vector<SymbolTerm>& terms) {
    MwExpr r;
    for (const auto& t : terms) {
        MwMonomial m;
        m.brackets = t.symbols;
        r.add_term(m, t.coeff);
    }
    return r;
}

} // namespace mwk
