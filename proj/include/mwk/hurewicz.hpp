#pragma once

// The automorphism tau of K_2^MW induced by (U,V) |-> (U^-1, V), and the
// Hurewicz homomorphism H: F(1) -> K_1^MW with
//     H(alpha * theta(W)) = eta * tau(alpha) + [W],
// so in particular H(theta(W)) = [W] and H([U][V] theta(W)) = eta[U^-1][V] + [W].

#include <vector>

#include "fa1.hpp"

namespace mwk {

// degree-1 homogeneous MwExpr
using K1Expr = MwExpr;

// tau goes through pure-symbol form: [x][y] |-> [x^-1][y], then renormalize
inline MwExpr tau(const MwExpr& alpha, const NormalizeOptions& opt = {}) {
    std::vector<SymbolTerm> sf = to_symbol_form(alpha, 2, opt);
    MwExpr out;
    for (const auto& t : sf) {
        MwMonomial m;
        m.brackets = {unit_inv(t.symbols[0]), t.symbols[1]};
        out.add_term(m, t.coeff);
    }
    return normalize(out, nullptr, opt);
}

inline K1Expr eta_mul(const MwExpr& alpha, const NormalizeOptions& opt = {}) {
    return normalize(eta_times(alpha), nullptr, opt);
}

// restriction of H to K_2^MW: multiplication by eta after tau
inline K1Expr hurewicz_restricted(const MwExpr& alpha,
                                  const NormalizeOptions& opt = {}) {
    return eta_mul(tau(alpha, opt), opt);
}

inline K1Expr hurewicz(const Fa1Element& x, const NormalizeOptions& opt = {}) {
    return normalize(hurewicz_restricted(x.k2, opt) + bracket(x.unit), nullptr,
                     opt);
}

struct HomomorphismCheck {
    struct Item {
        Fa1Element x, y;
        K1Expr h_xy;
        K1Expr h_x_plus_h_y;
        bool ok = false;
    };
    std::vector<Item> items;
    bool all_ok = true;
};

// asserts H(x y) = H(x) + H(y) on each pair
inline HomomorphismCheck check_homomorphism(
    const std::vector<std::pair<Fa1Element, Fa1Element>>& pairs,
    const NormalizeOptions& opt = {}) {
    HomomorphismCheck rep;
    for (const auto& [x, y] : pairs) {
        HomomorphismCheck::Item item;
        item.x = x;
        item.y = y;
        item.h_xy = hurewicz(fa1_mul(x, y, opt), opt);
        item.h_x_plus_h_y = normalize(hurewicz(x, opt) + hurewicz(y, opt),
                                      nullptr, opt);
        item.ok = item.h_xy == item.h_x_plus_h_y;
        rep.all_ok = rep.all_ok && item.ok;
        rep.items.push_back(std::move(item));
    }
    return rep;
}

} // namespace mwk
