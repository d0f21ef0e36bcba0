#pragma once

// Unit groups F^x.  The generic (formal) unit group is -1^s * prod x_i^{n_i}
// on identifier-named indeterminates; concrete units live in a field backend
// and are only data here (their arithmetic is in fields.hpp).

#include <map>
#include <string>
#include <variant>

#include "errors.hpp"

namespace mwk {

// An element of the generic unit group: a sign bit (the distinguished
// constant -1, which is 2-torsion) and a finite exponent map with no zeros.
struct FormalUnit {
    bool sign = false;
    std::map<std::string, int> exps;

    bool is_one() const { return !sign && exps.empty(); }
    bool is_minus_one() const { return sign && exps.empty(); }
    bool is_indeterminate() const {
        return !sign && exps.size() == 1 && exps.begin()->second == 1;
    }
    // -1 or a single indeterminate: the bracket atoms of normal forms
    bool is_atom() const { return is_minus_one() || is_indeterminate(); }
    // exactly x^-1
    bool is_inverse_atom() const {
        return !sign && exps.size() == 1 && exps.begin()->second == -1;
    }

    static FormalUnit one() { return {}; }
    static FormalUnit minus_one() {
        FormalUnit u;
        u.sign = true;
        return u;
    }
    static FormalUnit ind(const std::string& name, int e = 1) {
        FormalUnit u;
        if (e != 0) u.exps.emplace(name, e);
        return u;
    }

    bool operator==(const FormalUnit& o) const {
        return sign == o.sign && exps == o.exps;
    }
};

inline FormalUnit unit_mul(const FormalUnit& a, const FormalUnit& b) {
    FormalUnit r;
    r.sign = a.sign != b.sign;
    r.exps = a.exps;
    for (const auto& [name, e] : b.exps) {
        int v = (r.exps.count(name) ? r.exps[name] : 0) + e;
        if (v == 0)
            r.exps.erase(name);
        else
            r.exps[name] = v;
    }
    return r;
}

inline FormalUnit unit_inv(const FormalUnit& a) {
    FormalUnit r;
    r.sign = a.sign;
    for (const auto& [name, e] : a.exps) r.exps.emplace(name, -e);
    return r;
}

inline FormalUnit unit_pow(const FormalUnit& a, int n) {
    FormalUnit r;
    r.sign = a.sign && (n % 2 != 0);
    if (n != 0)
        for (const auto& [name, e] : a.exps) r.exps.emplace(name, e * n);
    return r;
}

// Total order: -1 sorts before every indeterminate (it compares as a virtual
// atom with empty name), indeterminates by identifier, then lexicographically
// on exponents.  Returns <0, 0, >0.
inline int unit_cmp(const FormalUnit& a, const FormalUnit& b) {
    auto ai = a.exps.begin(), ae = a.exps.end();
    auto bi = b.exps.begin(), be = b.exps.end();
    // the sign contributes a leading ("", 1) entry
    bool asign = a.sign, bsign = b.sign;
    while (true) {
        bool ahas = asign || ai != ae;
        bool bhas = bsign || bi != be;
        if (!ahas && !bhas) return 0;
        if (!ahas) return -1;
        if (!bhas) return 1;
        std::string an = asign ? std::string() : ai->first;
        std::string bn = bsign ? std::string() : bi->first;
        if (an != bn) return an < bn ? -1 : 1;
        int aexp = asign ? 1 : ai->second;
        int bexp = bsign ? 1 : bi->second;
        if (aexp != bexp) return aexp < bexp ? -1 : 1;
        if (asign)
            asign = false;
        else
            ++ai;
        if (bsign)
            bsign = false;
        else
            ++bi;
    }
}

inline bool operator<(const FormalUnit& a, const FormalUnit& b) {
    return unit_cmp(a, b) < 0;
}

// Literal syntax shared with the CLI grammar: `U`, `-1`, `-U`, `U^-1`, `U*V^-2`.
inline std::string render_unit(const FormalUnit& u) {
    std::string s;
    if (u.sign) s += "-";
    if (u.exps.empty()) {
        s += "1";
        return s;
    }
    bool first = true;
    for (const auto& [name, e] : u.exps) {
        if (!first) s += "*";
        first = false;
        s += name;
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

// A nonzero element of a concrete field backend; `value` is a unit residue
// for F_q backends and +1/-1 for the real-sign backend.
struct ConcreteUnit {
    std::string field;
    int value = 1;

    bool operator==(const ConcreteUnit& o) const {
        return field == o.field && value == o.value;
    }
};

using Unit = std::variant<FormalUnit, ConcreteUnit>;

} // namespace mwk
