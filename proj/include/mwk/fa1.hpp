#pragma once

// The group F(1) = pi_1^{A^1}(P^1) of a generic field: elements are pairs
// (alpha, u) denoting alpha * theta(u), with alpha of degree 2 and u a formal
// unit.  The product is the central extension law
//     (alpha, U) (beta, V) = (alpha + beta + <-1>[U][V], UV),
// theta the canonical section of gamma.  hk2_member decides membership in
// h K_2^MW by integer linear algebra over the normal-form monomial basis.

#include <functional>
#include <utility>

#include "rewrite.hpp"
#include "snf.hpp"

namespace mwk {

// the 2-cocycle <-1>[U][V]
inline MwExpr fa1_cocycle(const FormalUnit& u, const FormalUnit& v,
                          const NormalizeOptions& opt = {}) {
    return normalize(
        concat_product(gw_class(FormalUnit::minus_one()),
                       concat_product(MwExpr(MwMonomial{0, {u}}),
                                      MwExpr(MwMonomial{0, {v}}))),
        nullptr, opt);
}

struct Fa1Element {
    MwExpr k2;       // normalized, homogeneous of degree 2
    FormalUnit unit;

    Fa1Element() : unit(FormalUnit::one()) {}
    Fa1Element(const MwExpr& alpha, FormalUnit u, const NormalizeOptions& opt = {})
        : k2(normalize(alpha, nullptr, opt)), unit(std::move(u)) {
        if (!k2.is_homogeneous(2))
            throw DegreeError("Fa1Element: k2 part must be homogeneous of degree 2");
    }

    bool operator==(const Fa1Element& o) const {
        return unit == o.unit && k2 == o.k2;
    }
};

inline Fa1Element theta(const FormalUnit& u) { return Fa1Element(MwExpr(), u); }

inline Fa1Element fa1_identity() { return Fa1Element(); }

inline FormalUnit gamma(const Fa1Element& x) { return x.unit; }

inline Fa1Element fa1_mul(const Fa1Element& x, const Fa1Element& y,
                          const NormalizeOptions& opt = {}) {
    return Fa1Element(x.k2 + y.k2 + fa1_cocycle(x.unit, y.unit, opt),
                      unit_mul(x.unit, y.unit), opt);
}

inline Fa1Element fa1_inv(const Fa1Element& x, const NormalizeOptions& opt = {}) {
    FormalUnit ui = unit_inv(x.unit);
    return Fa1Element(-x.k2 - fa1_cocycle(x.unit, ui, opt), ui, opt);
}

inline Fa1Element fa1_pow(const Fa1Element& x, int n,
                          const NormalizeOptions& opt = {}) {
    Fa1Element base = n >= 0 ? x : fa1_inv(x, opt);
    int m = n >= 0 ? n : -n;
    Fa1Element r;
    for (int i = 0; i < m; ++i) r = fa1_mul(r, base, opt);
    return r;
}

inline Fa1Element fa1_commutator(const Fa1Element& x, const Fa1Element& y,
                                 const NormalizeOptions& opt = {}) {
    return fa1_mul(fa1_mul(x, y, opt),
                   fa1_mul(fa1_inv(x, opt), fa1_inv(y, opt), opt), opt);
}

inline bool fa1_equal(const Fa1Element& x, const Fa1Element& y,
                      const NormalizeOptions& opt = {}) {
    return x.unit == y.unit && mw_equal(x.k2, y.k2, opt);
}

inline std::string render_fa1(const Fa1Element& x) {
    std::string k2 = render_mw(x.k2);
    std::string th = "theta(" + render_unit(x.unit) + ")";
    if (k2 == "0") return th; // 0 in the K2 part means the bare section
    return "(" + k2 + ") * " + th;
}

// ---------------------------------------------------------------------------
// Membership in h K_2^MW
// ---------------------------------------------------------------------------

struct Hk2Options {
    int eta_slack = 2;          // witness eta bound above max eta of the input
    std::size_t max_basis = 4096;
    NormalizeOptions norm;
};

struct Hk2Result {
    bool member = false;
    MwExpr witness; // alpha = normalize(h * witness) when member
};

// All normal-form monomials of degree 2 over the given indeterminates with
// eta <= eta_max: brackets are [-1]^j then r distinct indeterminates,
// j + r = eta + 2, with j = 0 when eta >= 2 and j <= 1 when eta == 1.
inline std::vector<MwMonomial> degree2_basis(const std::set<std::string>& vars,
                                             int eta_max) {
    std::vector<std::string> names(vars.begin(), vars.end());
    std::vector<MwMonomial> out;
    for (int eta = 0; eta <= eta_max; ++eta) {
        int nb = eta + 2;
        int jmax = eta == 0 ? nb : (eta == 1 ? 1 : 0);
        for (int j = 0; j <= jmax; ++j) {
            int r = nb - j;
            if (r < 0 || r > static_cast<int>(names.size())) continue;
            // choose r distinct indeterminates, ascending
            std::vector<int> pick(r);
            std::function<void(int, int)> choose = [&](int start, int depth) {
                if (depth == r) {
                    MwMonomial m;
                    m.eta = eta;
                    for (int l = 0; l < j; ++l)
                        m.brackets.push_back(FormalUnit::minus_one());
                    for (int l = 0; l < r; ++l)
                        m.brackets.push_back(FormalUnit::ind(names[pick[l]]));
                    out.push_back(std::move(m));
                    return;
                }
                for (int i = start; i < static_cast<int>(names.size()); ++i) {
                    pick[depth] = i;
                    choose(i + 1, depth + 1);
                }
            };
            choose(0, 0);
        }
    }
    return out;
}

inline Hk2Result hk2_member(const MwExpr& alpha_in,
                            const std::set<std::string>& extra_vars = {},
                            const Hk2Options& opt = {}) {
    MwExpr alpha = normalize(alpha_in, nullptr, opt.norm);
    Hk2Result res;
    if (alpha.is_zero()) {
        res.member = true;
        return res;
    }
    if (!alpha.is_homogeneous(2))
        throw DegreeError("hk2_member: input must be homogeneous of degree 2");

    std::set<std::string> vars = alpha.indeterminates();
    vars.insert(extra_vars.begin(), extra_vars.end());
    int eta_max = alpha.max_eta() + opt.eta_slack;
    std::vector<MwMonomial> basis = degree2_basis(vars, eta_max);
    if (basis.size() > opt.max_basis)
        throw BasisBound("hk2_member: basis bound exceeded (" +
                         std::to_string(basis.size()) + " monomials)");

    MwExpr h = h_expr();
    std::vector<MwExpr> columns;
    columns.reserve(basis.size());
    std::map<MwMonomial, std::size_t> row_of;
    auto touch = [&row_of](const MwExpr& e) {
        for (const auto& [m, c] : e.terms())
            row_of.emplace(m, row_of.size());
    };
    touch(alpha);
    for (const auto& b : basis) {
        columns.push_back(mw_mul(h, MwExpr(b), opt.norm));
        touch(columns.back());
    }

    IntMatrix mat(row_of.size(), basis.size());
    for (std::size_t j = 0; j < columns.size(); ++j)
        for (const auto& [m, c] : columns[j].terms())
            mat.at(row_of.at(m), j) = c;
    std::vector<Int> rhs(row_of.size(), 0);
    for (const auto& [m, c] : alpha.terms()) rhs[row_of.at(m)] = c;

    auto sol = solve_integer(mat, rhs);
    if (!sol) return res;
    res.member = true;
    for (std::size_t j = 0; j < basis.size(); ++j)
        res.witness.add_term(basis[j], (*sol)[j]);
    res.witness = normalize(res.witness, nullptr, opt.norm);
    if (!mw_equal(mw_mul(h, res.witness, opt.norm), alpha, opt.norm))
        throw Error("hk2_member: witness verification failed");
    return res;
}

} // namespace mwk
