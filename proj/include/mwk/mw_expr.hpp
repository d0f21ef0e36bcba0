#pragma once

// Milnor-Witt expressions: integer-linear combinations of monomials
// eta^a [u_1]...[u_k].  This header is the raw graded container; the rewrite
// rules and normal forms live in rewrite.hpp.

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "units.hpp"

namespace mwk {

using Int = boost::multiprecision::cpp_int;

struct MwMonomial {
    int eta = 0;
    std::vector<FormalUnit> brackets;

    // degree in the K^MW grading: brackets contribute +1 each, eta -1
    int degree() const { return static_cast<int>(brackets.size()) - eta; }

    bool operator==(const MwMonomial& o) const {
        return eta == o.eta && brackets == o.brackets;
    }
};

// Term order used for the canonical rendering: (eta, bracket word).
inline bool operator<(const MwMonomial& a, const MwMonomial& b) {
    if (a.eta != b.eta) return a.eta < b.eta;
    std::size_t n = std::min(a.brackets.size(), b.brackets.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = unit_cmp(a.brackets[i], b.brackets[i]);
        if (c != 0) return c < 0;
    }
    return a.brackets.size() < b.brackets.size();
}

class MwExpr {
  public:
    using Terms = std::map<MwMonomial, Int>;

    MwExpr() = default;
    /* implicit */ MwExpr(int n) { add_term(MwMonomial{}, Int(n)); }
    /* implicit */ MwExpr(const Int& n) { add_term(MwMonomial{}, n); }
    explicit MwExpr(const MwMonomial& m, Int c = 1) { add_term(m, c); }

    static MwExpr zero() { return MwExpr(); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(const MwMonomial& m, const Int& c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    MwExpr& operator+=(const MwExpr& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    MwExpr& operator-=(const MwExpr& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    MwExpr& operator*=(const Int& k) {
        if (k == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= k;
        return *this;
    }

    friend MwExpr operator+(MwExpr a, const MwExpr& b) { return a += b; }
    friend MwExpr operator-(MwExpr a, const MwExpr& b) { return a -= b; }
    friend MwExpr operator-(MwExpr a) {
        for (auto& [m, c] : a.terms_) c = -c;
        return a;
    }
    friend MwExpr operator*(const Int& k, MwExpr a) { return a *= k; }
    friend MwExpr operator*(MwExpr a, const Int& k) { return a *= k; }

    bool operator==(const MwExpr& o) const { return terms_ == o.terms_; }

    // homogeneous degree; nullopt for 0 (degree of every n) and mixed input
    std::optional<int> degree() const {
        std::optional<int> d;
        for (const auto& [m, c] : terms_) {
            if (!d)
                d = m.degree();
            else if (*d != m.degree())
                return std::nullopt;
        }
        return d;
    }
    bool is_homogeneous(int n) const {
        for (const auto& [m, c] : terms_)
            if (m.degree() != n) return false;
        return true;
    }

    std::set<std::string> indeterminates() const {
        std::set<std::string> s;
        for (const auto& [m, c] : terms_)
            for (const auto& u : m.brackets)
                for (const auto& [name, e] : u.exps) s.insert(name);
        return s;
    }

    int max_eta() const {
        int e = 0;
        for (const auto& [m, c] : terms_) e = std::max(e, m.eta);
        return e;
    }

  private:
    Terms terms_;
};

// Unnormalized product: eta powers add, bracket words concatenate.
inline MwExpr concat_product(const MwExpr& a, const MwExpr& b) {
    MwExpr r;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            MwMonomial m;
            m.eta = ma.eta + mb.eta;
            m.brackets = ma.brackets;
            m.brackets.insert(m.brackets.end(), mb.brackets.begin(),
                              mb.brackets.end());
            r.add_term(m, ca * cb);
        }
    return r;
}

inline MwExpr eta_times(const MwExpr& a, int k = 1) {
    MwExpr r;
    for (const auto& [m, c] : a.terms()) {
        MwMonomial n = m;
        n.eta += k;
        r.add_term(n, c);
    }
    return r;
}

inline std::string render_monomial(const MwMonomial& m) {
    std::string s;
    if (m.eta == 1)
        s += "eta";
    else if (m.eta > 1)
        s += "eta^" + std::to_string(m.eta);
    if (!m.brackets.empty()) {
        if (!s.empty()) s += "*";
        for (const auto& u : m.brackets) s += "[" + render_unit(u) + "]";
    }
    return s; // empty for the unit monomial
}

// Canonical text form, e.g. `2*[U][V] + eta*[-1][U][V]`, `0`, `-[U]`.
inline std::string render_mw(const MwExpr& e) {
    if (e.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : e.terms()) {
        Int a = c;
        if (first) {
            if (a < 0) {
                s += "-";
                a = -a;
            }
        } else {
            s += a < 0 ? " - " : " + ";
            if (a < 0) a = -a;
        }
        first = false;
        std::string mono = render_monomial(m);
        if (mono.empty()) {
            s += a.str();
        } else {
            if (a != 1) s += a.str() + "*";
            s += mono;
        }
    }
    return s;
}

} // namespace mwk
