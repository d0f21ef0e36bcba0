#pragma once

// Concrete field backends (F3, F5, F7, F9 and the real-sign backend),
// diagonal quadratic forms with their GW/Witt classification, and the probe
// homomorphisms that evaluate MW expressions in Witt rings.
//
// Probe realization: [u] |-> <u> - <1> in W(F) (the class of the binary form
// <u,-1>, i.e. minus the Pfister form <<u>>), and eta acts as the identity.
// On even bracket lengths this agrees with the plain Pfister product
// <<u_1,...,u_k>>; the sign twist on odd lengths is what makes every rewrite
// rule a Witt-ring identity (h vanishes in W, so eps-commutation and the
// eta-h reductions all hold).  Rule-by-rule invariance is fuzzed in the test
// suite; the convention is pinned there.

#include <array>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "mw_expr.hpp"

namespace mwk {

// Table-driven field of odd order q <= 9 (F9 = F3[i], i^2 = -1), or the
// real-sign backend (q == 0) whose only unit data is the sign.
class FieldBackend {
  public:
    FieldBackend() : FieldBackend("R", 0) {} // default: the real-sign backend

    static FieldBackend make(const std::string& id) {
        if (id == "R") return FieldBackend(id, 0);
        if (id == "F3") return FieldBackend(id, 3);
        if (id == "F5") return FieldBackend(id, 5);
        if (id == "F7") return FieldBackend(id, 7);
        if (id == "F9") return FieldBackend(id, 9);
        throw BackendError("unsupported field backend: " + id);
    }

    const std::string& id() const { return id_; }
    int q() const { return q_; }
    bool is_real() const { return q_ == 0; }
    bool is_finite() const { return q_ != 0; }

    int add(int a, int b) const {
        if (is_real()) throw BackendError("real backend has no addition");
        return add_[idx(a)][idx(b)];
    }
    int sub(int a, int b) const { return add(a, neg(b)); }
    int mul(int a, int b) const {
        if (is_real()) return a * b;
        return mul_[idx(a)][idx(b)];
    }
    int neg(int a) const {
        if (is_real()) return -a;
        return neg_[idx(a)];
    }
    int inv(int a) const {
        if (is_real()) return a;
        if (a == 0) throw BackendError("inverse of zero");
        return inv_[idx(a)];
    }
    bool is_square(int a) const {
        if (is_real()) return a > 0;
        return square_[idx(a)];
    }
    // canonical square-class representative: 1 or the least non-square
    int square_class(int a) const {
        if (is_real()) return a > 0 ? 1 : -1;
        if (a == 0) throw BackendError("square class of zero");
        return is_square(a) ? 1 : least_nonsquare_;
    }
    int least_nonsquare() const {
        if (is_real()) return -1;
        return least_nonsquare_;
    }
    int one() const { return 1; }
    int minus_one() const { return is_real() ? -1 : neg_[1]; }

    std::vector<int> units() const {
        if (is_real()) return {1, -1};
        std::vector<int> u;
        for (int a = 1; a < q_; ++a) u.push_back(a);
        return u;
    }

    int pow(int a, int e) const {
        int r = 1;
        int base = e >= 0 ? a : inv(a);
        int n = e >= 0 ? e : -e;
        for (int i = 0; i < n; ++i) r = mul(r, base);
        return r;
    }

    bool operator==(const FieldBackend& o) const { return id_ == o.id_; }

  private:
    FieldBackend(std::string id, int q) : id_(std::move(id)), q_(q) {
        if (q_ == 0) return;
        int n = q_;
        add_.assign(n, std::vector<int>(n, 0));
        mul_.assign(n, std::vector<int>(n, 0));
        neg_.assign(n, 0);
        inv_.assign(n, 0);
        square_.assign(n, false);
        if (q_ == 9) {
            // elements a + 3b encode a + b*i over F3 with i^2 = -1
            auto pack = [](int a, int b) { return a + 3 * b; };
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    for (int c = 0; c < 3; ++c)
                        for (int d = 0; d < 3; ++d) {
                            int x = pack(a, b), y = pack(c, d);
                            add_[x][y] = pack((a + c) % 3, (b + d) % 3);
                            mul_[x][y] = pack((a * c + 2 * b * d) % 3,
                                              (a * d + b * c) % 3);
                        }
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    neg_[pack(a, b)] = pack((3 - a) % 3, (3 - b) % 3);
        } else {
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    add_[a][b] = (a + b) % n;
                    mul_[a][b] = (a * b) % n;
                }
            for (int a = 0; a < n; ++a) neg_[a] = (n - a) % n;
        }
        for (int a = 1; a < n; ++a) square_[mul_[a][a]] = true;
        for (int a = 1; a < n; ++a)
            for (int b = 1; b < n; ++b)
                if (mul_[a][b] == 1) inv_[a] = b;
        least_nonsquare_ = 0;
        for (int a = 1; a < n; ++a)
            if (!square_[a]) {
                least_nonsquare_ = a;
                break;
            }
    }

    int idx(int a) const {
        if (a < 0 || a >= q_) {
            int r = a % q_;
            return r < 0 ? r + q_ : r;
        }
        return a;
    }

    std::string id_;
    int q_;
    std::vector<std::vector<int>> add_, mul_;
    std::vector<int> neg_, inv_;
    std::vector<bool> square_;
    int least_nonsquare_ = 0;
};

// Diagonal quadratic form <a_1,...,a_n>; entries are backend units.
struct QForm {
    std::string field;
    std::vector<int> entries;
};

// Classification invariants: (rank, disc) over odd finite fields,
// (rank, signature) over the reals.
struct GwClass {
    std::string field;
    int rank = 0;
    int disc = 1;      // canonical square-class representative of det
    int signature = 0; // real backend only

    bool operator==(const GwClass& o) const {
        if (field != o.field || rank != o.rank) return false;
        if (field == "R") return signature == o.signature;
        return disc == o.disc;
    }
};

inline GwClass qform_classify(const QForm& f) {
    FieldBackend k = FieldBackend::make(f.field);
    GwClass g;
    g.field = f.field;
    g.rank = static_cast<int>(f.entries.size());
    if (k.is_real()) {
        int sig = 0;
        for (int a : f.entries) {
            if (a == 0) throw BackendError("degenerate form entry");
            sig += a > 0 ? 1 : -1;
        }
        g.signature = sig;
        g.disc = g.rank == 0 ? 1 : (((g.rank - g.signature) / 2) % 2 == 0 ? 1 : -1);
        return g;
    }
    int det = 1;
    for (int a : f.entries) {
        if (a % k.q() == 0) throw BackendError("degenerate form entry");
        det = k.mul(det, a);
    }
    g.disc = g.rank == 0 ? 1 : k.square_class(det);
    return g;
}

// Witt class: canonical anisotropic representative over finite backends
// (rank <= 2, entries normalized to square-class reps), signature over R.
struct WittClass {
    std::string field;
    std::vector<int> diag; // finite backends
    Int signature = 0;     // real backend

    bool is_zero() const {
        return field == "R" ? signature == 0 : diag.empty();
    }
    bool operator==(const WittClass& o) const {
        if (field != o.field) return false;
        return field == "R" ? signature == o.signature : diag == o.diag;
    }
    bool operator!=(const WittClass& o) const { return !(*this == o); }
};

// Canonical anisotropic kernel from (rank parity, signed discriminant).
// For odd q these two invariants classify W(F_q); the brute-force
// equivalence oracle cross-checks this in the test suite.
inline WittClass witt_from_invariants(const FieldBackend& k, int rank_mod_2,
                                      int signed_disc_class) {
    WittClass w;
    w.field = k.id();
    if (rank_mod_2 == 0) {
        if (signed_disc_class == 1) return w; // hyperbolic
        // the unique anisotropic binary class
        if (k.is_square(k.minus_one()))
            w.diag = {1, k.least_nonsquare()};
        else
            w.diag = {1, 1};
        return w;
    }
    w.diag = {signed_disc_class};
    return w;
}

inline WittClass witt_reduce(const QForm& f) {
    FieldBackend k = FieldBackend::make(f.field);
    WittClass w;
    w.field = f.field;
    if (k.is_real()) {
        Int sig = 0;
        for (int a : f.entries) {
            if (a == 0) throw BackendError("degenerate form entry");
            sig += a > 0 ? 1 : -1;
        }
        w.signature = sig;
        return w;
    }
    int n = static_cast<int>(f.entries.size());
    int det = 1;
    for (int a : f.entries) {
        if (a % k.q() == 0) throw BackendError("degenerate form entry");
        det = k.mul(det, a);
    }
    // signed discriminant (-1)^{n(n-1)/2} det
    int sd = det;
    if ((n * (n - 1) / 2) % 2 == 1) sd = k.mul(sd, k.minus_one());
    return witt_from_invariants(k, n % 2, n == 0 ? 1 : k.square_class(sd));
}

inline WittClass witt_zero(const FieldBackend& k) {
    WittClass w;
    w.field = k.id();
    return w;
}

inline WittClass witt_one(const FieldBackend& k) {
    WittClass w;
    w.field = k.id();
    if (k.is_real())
        w.signature = 1;
    else
        w.diag = {1};
    return w;
}

inline WittClass witt_of_entries(const FieldBackend& k,
                                 const std::vector<int>& entries) {
    return witt_reduce(QForm{k.id(), entries});
}

inline WittClass witt_add(const FieldBackend& k, const WittClass& a,
                          const WittClass& b) {
    if (k.is_real()) {
        WittClass w;
        w.field = k.id();
        w.signature = a.signature + b.signature;
        return w;
    }
    std::vector<int> d = a.diag;
    d.insert(d.end(), b.diag.begin(), b.diag.end());
    return witt_of_entries(k, d);
}

inline WittClass witt_neg(const FieldBackend& k, const WittClass& a) {
    if (k.is_real()) {
        WittClass w;
        w.field = k.id();
        w.signature = -a.signature;
        return w;
    }
    std::vector<int> d;
    for (int x : a.diag) d.push_back(k.neg(x));
    return witt_of_entries(k, d);
}

inline WittClass witt_mul(const FieldBackend& k, const WittClass& a,
                          const WittClass& b) {
    if (k.is_real()) {
        WittClass w;
        w.field = k.id();
        w.signature = a.signature * b.signature;
        return w;
    }
    std::vector<int> d;
    for (int x : a.diag)
        for (int y : b.diag) d.push_back(k.mul(x, y));
    return witt_of_entries(k, d);
}

inline WittClass witt_scale(const FieldBackend& k, const Int& c,
                            const WittClass& a) {
    if (k.is_real()) {
        WittClass w;
        w.field = k.id();
        w.signature = c * a.signature;
        return w;
    }
    // additive exponent of W(F_q) divides 4
    Int r = c % 4;
    if (r < 0) r += 4;
    int n = static_cast<int>(r);
    WittClass w = witt_zero(k);
    for (int i = 0; i < n; ++i) w = witt_add(k, w, a);
    return w;
}

inline ConcreteUnit unit_mul(const ConcreteUnit& a, const ConcreteUnit& b) {
    if (a.field != b.field)
        throw KindError("unit_mul: mixed backends " + a.field + " and " + b.field);
    FieldBackend k = FieldBackend::make(a.field);
    return ConcreteUnit{a.field, k.mul(a.value, b.value)};
}

inline ConcreteUnit unit_inv(const ConcreteUnit& a) {
    FieldBackend k = FieldBackend::make(a.field);
    return ConcreteUnit{a.field, k.inv(a.value)};
}

inline Unit unit_mul(const Unit& a, const Unit& b) {
    if (std::holds_alternative<FormalUnit>(a) &&
        std::holds_alternative<FormalUnit>(b))
        return unit_mul(std::get<FormalUnit>(a), std::get<FormalUnit>(b));
    if (std::holds_alternative<ConcreteUnit>(a) &&
        std::holds_alternative<ConcreteUnit>(b))
        return unit_mul(std::get<ConcreteUnit>(a), std::get<ConcreteUnit>(b));
    throw KindError("unit_mul: cannot mix formal and concrete units");
}

inline Unit unit_inv(const Unit& a) {
    if (std::holds_alternative<FormalUnit>(a))
        return unit_inv(std::get<FormalUnit>(a));
    return unit_inv(std::get<ConcreteUnit>(a));
}

// Evaluation of a formal unit at an assignment of indeterminates.
using Assignment = std::map<std::string, int>;

inline int eval_unit(const FieldBackend& k, const FormalUnit& u,
                     const Assignment& asg) {
    int v = u.sign ? k.minus_one() : 1;
    for (const auto& [name, e] : u.exps) {
        auto it = asg.find(name);
        if (it == asg.end())
            throw BackendError("probe: no assignment for indeterminate " + name);
        v = k.mul(v, k.pow(it->second, e));
    }
    return v;
}

// sigma(u) = <u> - <1>, as the class of <u,-1>
inline WittClass witt_sigma(const FieldBackend& k, int u) {
    return witt_of_entries(k, {u, k.minus_one()});
}

// The probe homomorphism: monomial eta^a [u_1]...[u_k] evaluates to
// prod_i (<u_i(asg)> - 1) in W(F); integer-linear extension over terms.
inline WittClass probe(const MwExpr& e, const Assignment& asg,
                       const FieldBackend& k) {
    WittClass total = witt_zero(k);
    for (const auto& [m, c] : e.terms()) {
        WittClass term = witt_one(k);
        for (const auto& u : m.brackets)
            term = witt_mul(k, term, witt_sigma(k, eval_unit(k, u, asg)));
        total = witt_add(k, total, witt_scale(k, c, term));
    }
    return total;
}

inline std::string render_witt(const WittClass& w) {
    if (w.field == "R") return "signature " + w.signature.str();
    if (w.diag.empty()) return "0";
    std::string s = "<";
    for (std::size_t i = 0; i < w.diag.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(w.diag[i]);
    }
    s += ">";
    return s;
}

// ---------------------------------------------------------------------------
// Brute-force oracles
// ---------------------------------------------------------------------------

namespace detail {

// dense symmetric matrix over F_q, encoded row-major
struct SymMatrix {
    int n;
    std::vector<int> a; // n*n

    int& at(int i, int j) { return a[i * n + j]; }
    int at(int i, int j) const { return a[i * n + j]; }
};

inline SymMatrix diag_matrix(int n, const std::vector<int>& d) {
    SymMatrix m{n, std::vector<int>(n * n, 0)};
    for (int i = 0; i < n; ++i) m.at(i, i) = d[i];
    return m;
}

inline long encode(const SymMatrix& m, int q) {
    long code = 0;
    for (int i = 0; i < m.n; ++i)
        for (int j = i; j < m.n; ++j) code = code * q + m.at(i, j);
    return code;
}

// A' = P^T A P
inline SymMatrix congruent(const FieldBackend& k, const SymMatrix& m,
                           const std::vector<int>& p) {
    int n = m.n;
    SymMatrix r{n, std::vector<int>(n * n, 0)};
    // t = A P
    std::vector<int> t(n * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int s = 0;
            for (int l = 0; l < n; ++l)
                s = k.add(s, k.mul(m.at(i, l), p[l * n + j]));
            t[i * n + j] = s;
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int s = 0;
            for (int l = 0; l < n; ++l)
                s = k.add(s, k.mul(p[l * n + i], t[l * n + j]));
            r.at(i, j) = s;
        }
    return r;
}

// elementary generators of GL_n(F_q): unit scalings of one coordinate and
// transvections I + e_ij
inline std::vector<std::vector<int>> gl_generators(const FieldBackend& k, int n) {
    std::vector<std::vector<int>> gens;
    auto identity = [n]() {
        std::vector<int> p(n * n, 0);
        for (int i = 0; i < n; ++i) p[i * n + i] = 1;
        return p;
    };
    for (int i = 0; i < n; ++i)
        for (int u : k.units()) {
            if (u == 1) continue;
            auto p = identity();
            p[i * n + i] = u;
            gens.push_back(p);
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            auto p = identity();
            p[i * n + j] = 1;
            gens.push_back(p);
        }
    return gens;
}

// full congruence orbit of a diagonal form among symmetric matrices
inline std::set<long> congruence_orbit(const FieldBackend& k,
                                       const std::vector<int>& diag) {
    int n = static_cast<int>(diag.size());
    SymMatrix start = diag_matrix(n, diag);
    auto gens = gl_generators(k, n);
    std::set<long> seen;
    std::vector<SymMatrix> frontier{start};
    seen.insert(encode(start, k.q()));
    while (!frontier.empty()) {
        std::vector<SymMatrix> next;
        for (const auto& m : frontier)
            for (const auto& p : gens) {
                SymMatrix m2 = congruent(k, m, p);
                if (seen.insert(encode(m2, k.q())).second) next.push_back(m2);
            }
        frontier = std::move(next);
    }
    return seen;
}

} // namespace detail

// Exhaustive equivalence test: is there an invertible change of variables
// over F_q carrying f to g?  Bounded to rank <= 3, q <= 7.
inline bool qform_equiv_bruteforce(const QForm& f, const QForm& g) {
    if (f.field != g.field)
        throw BackendError("qform_equiv_bruteforce: mixed backends");
    FieldBackend k = FieldBackend::make(f.field);
    if (!k.is_finite()) throw BackendError("qform_equiv_bruteforce: finite backends only");
    if (k.q() > 7) throw BackendError("qform_equiv_bruteforce: q <= 7 only");
    if (f.entries.size() > 3 || g.entries.size() > 3)
        throw BackendError("qform_equiv_bruteforce: rank <= 3 only");
    if (f.entries.size() != g.entries.size()) return false;
    if (f.entries.empty()) return true;
    std::vector<int> fd, gd;
    for (int x : f.entries) fd.push_back(((x % k.q()) + k.q()) % k.q());
    for (int x : g.entries) gd.push_back(((x % k.q()) + k.q()) % k.q());
    auto orbit = detail::congruence_orbit(k, fd);
    long gcode = detail::encode(
        detail::diag_matrix(static_cast<int>(gd.size()), gd), k.q());
    return orbit.count(gcode) > 0;
}

// Partition of all rank-n diagonal forms over F_q into congruence classes,
// computed purely from the GL-action orbits (one BFS per class).  Keys are
// entry vectors with values in 1..q-1; values are class ids.
inline std::map<std::vector<int>, int> qform_orbit_partition(
    const FieldBackend& k, int rank) {
    if (!k.is_finite() || k.q() > 7 || rank > 3)
        throw BackendError("qform_orbit_partition: rank <= 3, q <= 7 only");
    std::map<std::vector<int>, int> cls;
    std::vector<std::vector<int>> all(1);
    for (int r = 0; r < rank; ++r) {
        std::vector<std::vector<int>> next;
        for (const auto& t : all)
            for (int u : k.units()) {
                auto t2 = t;
                t2.push_back(u);
                next.push_back(t2);
            }
        all = std::move(next);
    }
    int next_id = 0;
    for (const auto& d : all) {
        if (cls.count(d)) continue;
        int id = next_id++;
        std::set<long> orbit = detail::congruence_orbit(k, d);
        // collect every diagonal form inside the orbit
        for (const auto& d2 : all) {
            if (cls.count(d2)) continue;
            long code = detail::encode(detail::diag_matrix(rank, d2), k.q());
            if (orbit.count(code)) cls[d2] = id;
        }
    }
    return cls;
}

// Is the diagonal form isotropic (represents 0 nontrivially)?  Exhaustive.
inline bool qform_isotropic_bruteforce(const QForm& f) {
    FieldBackend k = FieldBackend::make(f.field);
    if (!k.is_finite()) throw BackendError("finite backends only");
    int n = static_cast<int>(f.entries.size());
    if (n == 0) return false;
    std::vector<int> v(n, 0);
    while (true) {
        int i = 0;
        while (i < n && v[i] == k.q() - 1) v[i++] = 0;
        if (i == n) return false;
        ++v[i];
        int s = 0;
        for (int j = 0; j < n; ++j)
            s = k.add(s, k.mul(f.entries[j], k.mul(v[j], v[j])));
        if (s == 0) return true;
    }
}

} // namespace mwk
