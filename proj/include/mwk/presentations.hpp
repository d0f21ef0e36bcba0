#pragma once

// Brute-force finite-field oracles: finitely presented abelian groups via
// Smith normal form; Milnor K-groups K^M_n(F_q) from their symbol
// presentation; powers of the fundamental ideal from the enumerated Witt
// ring; K^MW_n(F_q) as the fiber product K^M_n x_{I^n/I^{n+1}} I^n; and the
// exactness check for 0 -> h K^MW_n -> K^MW_n -> K^MW_{n-1}.

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fields.hpp"
#include "snf.hpp"

namespace mwk {

class FinPresAbGroup {
  public:
    FinPresAbGroup() = default;
    FinPresAbGroup(std::vector<std::string> gens, IntMatrix rels)
        : gens_(std::move(gens)), rels_(std::move(rels)) {
        if (rels_.cols != gens_.size())
            throw Error("FinPresAbGroup: relation width != generator count");
        SnfResult snf = smith_normal_form(rels_);
        t_ = std::move(snf.t);
        diag_.assign(gens_.size(), 0); // missing diagonal entries are free
        for (std::size_t i = 0; i < snf.diag.size(); ++i) diag_[i] = snf.diag[i];
        for (std::size_t i = 0; i < diag_.size(); ++i)
            if (diag_[i] != 1) kept_.push_back(i);
    }

    const std::vector<std::string>& gens() const { return gens_; }
    const IntMatrix& rels() const { return rels_; }
    const std::vector<Int>& full_diag() const { return diag_; }

    // invariant factors, 1s dropped; 0 denotes a free Z summand
    std::vector<Int> invariant_factors() const {
        std::vector<Int> v;
        for (std::size_t i : kept_) v.push_back(diag_[i]);
        return v;
    }

    bool is_finite() const {
        for (std::size_t i : kept_)
            if (diag_[i] == 0) return false;
        return true;
    }

    Int order() const {
        Int n = 1;
        for (std::size_t i : kept_) {
            if (diag_[i] == 0) throw Error("order of an infinite group");
            n *= diag_[i];
        }
        return n;
    }

    bool is_trivial() const { return kept_.empty(); }

    // canonical coordinates of a Z-linear combination of the generators
    std::vector<Int> project(const std::vector<Int>& word) const {
        if (word.size() != gens_.size())
            throw Error("project: word length != generator count");
        std::vector<Int> v(gens_.size(), 0);
        // v = T^t * word
        for (std::size_t i = 0; i < gens_.size(); ++i)
            for (std::size_t j = 0; j < gens_.size(); ++j)
                if (t_.at(j, i) != 0) v[i] += t_.at(j, i) * word[j];
        std::vector<Int> out;
        for (std::size_t i : kept_) {
            Int x = v[i];
            if (diag_[i] != 0) {
                x %= diag_[i];
                if (x < 0) x += diag_[i];
            }
            out.push_back(x);
        }
        return out;
    }

    std::vector<Int> coordinate_moduli() const {
        std::vector<Int> v;
        for (std::size_t i : kept_) v.push_back(diag_[i]);
        return v;
    }

    std::string structure() const {
        if (kept_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        std::size_t free_rank = 0;
        for (std::size_t i : kept_) {
            if (diag_[i] == 0) {
                ++free_rank;
                continue;
            }
            if (!first) os << " + ";
            first = false;
            os << "Z/" << diag_[i].str();
        }
        if (free_rank > 0) {
            if (!first) os << " + ";
            os << "Z";
            if (free_rank > 1) os << "^" << free_rank;
        }
        return os.str();
    }

  private:
    std::vector<std::string> gens_;
    IntMatrix rels_;
    IntMatrix t_;
    std::vector<Int> diag_;
    std::vector<std::size_t> kept_;
};

// ---------------------------------------------------------------------------
// Milnor K-theory of small finite fields, from the symbol presentation:
// generators {u_1,...,u_n}, relations multilinearity in every slot and the
// Steinberg relation {..., u, 1-u, ...} = 0.
// ---------------------------------------------------------------------------

inline FinPresAbGroup milnor_k(int q, int n) {
    if (n < 1 || n > 3) throw BackendError("milnor_k: degree 1..3 only");
    FieldBackend k = FieldBackend::make("F" + std::to_string(q));
    if (n >= 3 && q > 7) throw BackendError("milnor_k: q <= 7 for degree 3");
    if (q > 9) throw BackendError("milnor_k: q <= 9 only");
    std::vector<int> units = k.units();
    std::size_t m = units.size();
    std::vector<int> unit_pos(k.q(), -1);
    for (std::size_t i = 0; i < m; ++i) unit_pos[units[i]] = static_cast<int>(i);

    std::size_t ngens = 1;
    for (int i = 0; i < n; ++i) ngens *= m;
    auto sym_index = [&](const std::vector<int>& tup) {
        std::size_t idx = 0;
        for (int p = 0; p < n; ++p) idx = idx * m + unit_pos[tup[p]];
        return idx;
    };

    std::vector<std::string> gen_names(ngens);
    {
        std::vector<int> tup(n, 0);
        std::function<void(int)> walk = [&](int p) {
            if (p == n) {
                std::string s = "{";
                for (int i = 0; i < n; ++i) {
                    if (i) s += ",";
                    s += std::to_string(tup[i]);
                }
                s += "}";
                gen_names[sym_index(tup)] = s;
                return;
            }
            for (int u : units) {
                tup[p] = u;
                walk(p + 1);
            }
        };
        walk(0);
    }

    std::vector<std::vector<Int>> rows;
    // multilinearity per slot
    std::vector<int> tup(n, 1);
    std::function<void(int, int)> walk_others = [&](int slot, int p) {
        if (p == n) {
            for (int u : units)
                for (int v : units) {
                    std::vector<Int> row(ngens, 0);
                    tup[slot] = k.mul(u, v);
                    row[sym_index(tup)] += 1;
                    tup[slot] = u;
                    row[sym_index(tup)] -= 1;
                    tup[slot] = v;
                    row[sym_index(tup)] -= 1;
                    rows.push_back(std::move(row));
                }
            return;
        }
        if (p == slot) {
            walk_others(slot, p + 1);
            return;
        }
        for (int u : units) {
            tup[p] = u;
            walk_others(slot, p + 1);
        }
    };
    for (int slot = 0; slot < n; ++slot) {
        std::fill(tup.begin(), tup.end(), 1);
        walk_others(slot, 0);
    }
    // Steinberg in adjacent slots
    for (int slot = 0; slot + 1 < n; ++slot) {
        std::vector<int> others(n, 1);
        std::function<void(int)> walk_st = [&](int p) {
            if (p == n) {
                for (int u : units) {
                    int w = k.sub(1, u);
                    if (w == 0) continue;
                    std::vector<Int> row(ngens, 0);
                    std::vector<int> t2 = others;
                    t2[slot] = u;
                    t2[slot + 1] = w;
                    row[sym_index(t2)] += 1;
                    rows.push_back(std::move(row));
                }
                return;
            }
            if (p == slot || p == slot + 1) {
                walk_st(p + 1);
                return;
            }
            for (int u : units) {
                others[p] = u;
                walk_st(p + 1);
            }
        };
        walk_st(0);
    }

    IntMatrix rels(rows.size(), ngens);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < ngens; ++j) rels.at(i, j) = rows[i][j];
    return FinPresAbGroup(gen_names, std::move(rels));
}

inline FinPresAbGroup milnor_k2(int q) { return milnor_k(q, 2); }

// ---------------------------------------------------------------------------
// The Witt ring of F_q, enumerated
// ---------------------------------------------------------------------------

struct WittRing {
    FieldBackend k;
    std::vector<WittClass> elems; // elems[0] is 0

    std::size_t index(const WittClass& w) const {
        for (std::size_t i = 0; i < elems.size(); ++i)
            if (elems[i] == w) return i;
        throw Error("WittRing: class not in ring");
    }
    std::size_t add(std::size_t i, std::size_t j) const {
        return index(witt_add(k, elems[i], elems[j]));
    }
    std::size_t mul(std::size_t i, std::size_t j) const {
        return index(witt_mul(k, elems[i], elems[j]));
    }
    std::size_t neg(std::size_t i) const { return index(witt_neg(k, elems[i])); }

    // the fundamental ideal: classes of even rank
    std::vector<std::size_t> ideal() const {
        std::vector<std::size_t> v;
        for (std::size_t i = 0; i < elems.size(); ++i)
            if (elems[i].diag.size() % 2 == 0) v.push_back(i);
        return v;
    }
};

inline WittRing make_witt_ring(int q) {
    FieldBackend k = FieldBackend::make("F" + std::to_string(q));
    WittRing w{k, {}};
    w.elems.push_back(witt_zero(k));
    // canonical representatives have entries in {1, s} and rank <= 2
    int s = k.least_nonsquare();
    std::vector<std::vector<int>> candidates = {{1}, {s}, {1, 1}, {1, s}, {s, s}};
    for (const auto& d : candidates) {
        WittClass c = witt_of_entries(k, d);
        bool seen = false;
        for (const auto& e : w.elems) seen = seen || e == c;
        if (!seen) w.elems.push_back(c);
    }
    return w;
}

// additive subgroup of the Witt ring generated by the given elements
inline std::set<std::size_t> additive_closure(const WittRing& w,
                                              std::set<std::size_t> gens) {
    std::set<std::size_t> cl = {w.index(witt_zero(w.k))};
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::size_t> cur(cl.begin(), cl.end());
        for (std::size_t x : cur) {
            for (std::size_t g : gens) {
                if (cl.insert(w.add(x, g)).second) grew = true;
                if (cl.insert(w.add(x, w.neg(g))).second) grew = true;
            }
        }
    }
    return cl;
}

// Presents a finite abelian group given by explicit element arithmetic:
// picks a generating subset greedily, takes element orders plus the full
// relation lattice among the generators, and reduces by SNF.
inline FinPresAbGroup present_finite_group(
    std::size_t size, std::size_t zero,
    const std::function<std::size_t(std::size_t, std::size_t)>& add,
    const std::function<std::size_t(std::size_t)>& neg,
    const std::function<std::string(std::size_t)>& name) {
    // greedy generating set
    std::vector<std::size_t> gens;
    std::set<std::size_t> closure = {zero};
    for (std::size_t e = 0; e < size && closure.size() < size; ++e) {
        if (closure.count(e)) continue;
        gens.push_back(e);
        std::set<std::size_t> cl = {zero};
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<std::size_t> cur(cl.begin(), cl.end());
            for (std::size_t x : cur)
                for (std::size_t g : gens) {
                    if (cl.insert(add(x, g)).second) grew = true;
                    if (cl.insert(add(x, neg(g))).second) grew = true;
                }
        }
        closure = std::move(cl);
    }
    if (closure.size() != size)
        throw Error("present_finite_group: generators do not span");

    std::vector<Int> orders;
    for (std::size_t g : gens) {
        Int o = 1;
        std::size_t x = g;
        while (x != zero) {
            x = add(x, g);
            ++o;
        }
        orders.push_back(o);
    }
    std::vector<std::vector<Int>> rows;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        std::vector<Int> row(gens.size(), 0);
        row[i] = orders[i];
        rows.push_back(row);
    }
    // all vanishing combinations below the per-generator orders
    std::vector<Int> c(gens.size(), 0);
    std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t i,
                                                             std::size_t acc) {
        if (i == gens.size()) {
            if (acc == zero) {
                bool all0 = true;
                for (const Int& x : c) all0 = all0 && x == 0;
                if (!all0) rows.push_back(c);
            }
            return;
        }
        std::size_t cur = acc;
        for (Int v = 0; v < orders[i]; ++v) {
            c[i] = v;
            walk(i + 1, cur);
            cur = add(cur, gens[i]);
        }
        c[i] = 0;
    };
    walk(0, zero);

    std::vector<std::string> gnames;
    for (std::size_t g : gens) gnames.push_back(name(g));
    IntMatrix rels(rows.size(), gens.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < gens.size(); ++j) rels.at(i, j) = rows[i][j];
    return FinPresAbGroup(gnames, std::move(rels));
}

// I^n(F_q) as a finitely presented group, with its element set
struct IdealPower {
    WittRing ring;
    int n = 0;
    std::vector<std::size_t> elements; // witt indices, sorted, element 0 first
    FinPresAbGroup pres;
};

inline IdealPower fundamental_ideal_power(int q, int n) {
    if (n < 0) throw BackendError("fundamental_ideal_power: n >= 0");
    if (q > 9) throw BackendError("fundamental_ideal_power: q <= 9 only");
    WittRing w = make_witt_ring(q);
    std::set<std::size_t> gens;
    if (n == 0) {
        for (std::size_t i = 1; i < w.elems.size(); ++i) gens.insert(i);
    } else {
        std::vector<std::size_t> ideal = w.ideal();
        std::set<std::size_t> products(ideal.begin(), ideal.end());
        for (int step = 1; step < n; ++step) {
            std::set<std::size_t> next;
            for (std::size_t x : products)
                for (std::size_t y : ideal) next.insert(w.mul(x, y));
            products = std::move(next);
        }
        gens = std::move(products);
        gens.erase(w.index(witt_zero(w.k)));
    }
    std::set<std::size_t> cl = additive_closure(w, gens);
    IdealPower out;
    out.ring = w;
    out.n = n;
    out.elements.assign(cl.begin(), cl.end());
    std::sort(out.elements.begin(), out.elements.end());
    // local ids 0..N-1 with 0 = zero class (witt index 0 is smallest)
    std::map<std::size_t, std::size_t> local;
    for (std::size_t i = 0; i < out.elements.size(); ++i)
        local[out.elements[i]] = i;
    auto add = [&w, &local, elems = out.elements](std::size_t a, std::size_t b) {
        return local.at(w.add(elems[a], elems[b]));
    };
    auto neg = [&w, &local, elems = out.elements](std::size_t a) {
        return local.at(w.neg(elems[a]));
    };
    auto nm = [&w, elems = out.elements](std::size_t a) {
        return render_witt(w.elems[elems[a]]);
    };
    out.pres = present_finite_group(out.elements.size(), 0, add, neg, nm);
    return out;
}

// ---------------------------------------------------------------------------
// K^MW_n(F_q) = K^M_n x_{I^n/I^{n+1}} I^n, by enumeration
// ---------------------------------------------------------------------------

struct KmwGroup {
    int q = 0;
    int n = 0;
    FinPresAbGroup milnor;  // K^M_n(F_q)
    IdealPower in_power;    // I^n
    IdealPower in1_power;   // I^{n+1}

    struct Elem {
        std::vector<Int> a;  // canonical K^M_n coordinates
        std::size_t w;       // witt index, member of I^n
        bool operator<(const Elem& o) const {
            if (a != o.a) return a < o.a;
            return w < o.w;
        }
        bool operator==(const Elem& o) const { return a == o.a && w == o.w; }
    };
    std::vector<Elem> elems;
    FinPresAbGroup pres;

    Elem zero() const {
        Elem e;
        e.a.assign(milnor.coordinate_moduli().size(), 0);
        e.w = 0; // index of the zero Witt class in the full ring
        return e;
    }
};

namespace detail {

// coset representative of x (a witt index in I^n) modulo I^{n+1}
inline std::size_t coset_rep(const WittRing& w,
                             const std::vector<std::size_t>& in1_elems,
                             std::size_t x) {
    std::size_t best = x;
    for (std::size_t y : in1_elems) best = std::min(best, w.add(x, y));
    return best;
}

} // namespace detail

inline KmwGroup kmw_finite_field(int q, int n) {
    if (n < 1 || n > 3) throw BackendError("kmw_finite_field: degree 1..3 only");
    KmwGroup g;
    g.q = q;
    g.n = n;
    g.milnor = milnor_k(q, n);
    g.in_power = fundamental_ideal_power(q, n);
    g.in1_power = fundamental_ideal_power(q, n + 1);
    if (!g.milnor.is_finite())
        throw Error("kmw_finite_field: K^M unexpectedly infinite");
    const WittRing& w = g.in_power.ring;

    // sanity: 2 I^n is contained in I^{n+1} (2x = <<-1>> x)
    for (std::size_t x : g.in_power.elements) {
        std::size_t twice = w.add(x, x);
        bool in1 = std::find(g.in1_power.elements.begin(),
                             g.in1_power.elements.end(),
                             twice) != g.in1_power.elements.end();
        if (!in1) throw Error("kmw_finite_field: 2 I^n not inside I^{n+1}");
    }

    // phi_A on K^M elements, spanned from the symbol generators
    FieldBackend k = w.k;
    std::vector<int> units = k.units();
    std::size_t m = units.size();
    std::vector<Int> moduli = g.milnor.coordinate_moduli();
    auto add_coords = [&moduli](const std::vector<Int>& a,
                                const std::vector<Int>& b) {
        std::vector<Int> r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            r[i] = a[i] + b[i];
            if (moduli[i] != 0) {
                r[i] %= moduli[i];
                if (r[i] < 0) r[i] += moduli[i];
            }
        }
        return r;
    };

    std::size_t ngens = g.milnor.gens().size();
    std::vector<std::vector<Int>> sym_coords;
    std::vector<std::size_t> sym_coset;
    {
        std::vector<int> tup(n, 1);
        std::function<void(int)> walk = [&](int p) {
            if (p == n) {
                std::vector<Int> word(ngens, 0);
                std::size_t idx = 0;
                for (int i = 0; i < n; ++i) {
                    std::size_t pos = 0;
                    while (units[pos] != tup[i]) ++pos;
                    idx = idx * m + pos;
                }
                word[idx] = 1;
                sym_coords.push_back(g.milnor.project(word));
                WittClass pf = witt_one(k);
                for (int i = 0; i < n; ++i)
                    pf = witt_mul(k, pf,
                                  witt_of_entries(k, {1, k.neg(tup[i])}));
                sym_coset.push_back(detail::coset_rep(
                    w, g.in1_power.elements, w.index(pf)));
                return;
            }
            for (int u : units) {
                tup[p] = u;
                walk(p + 1);
            }
        };
        walk(0);
    }

    std::map<std::vector<Int>, std::size_t> phi; // K^M coords -> coset rep
    std::vector<Int> zero_coords(moduli.size(), 0);
    phi[zero_coords] = detail::coset_rep(w, g.in1_power.elements, 0);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::pair<std::vector<Int>, std::size_t>> cur(phi.begin(),
                                                                  phi.end());
        for (const auto& [coords, cs] : cur)
            for (std::size_t j = 0; j < sym_coords.size(); ++j) {
                std::vector<Int> nc = add_coords(coords, sym_coords[j]);
                std::size_t ncs = detail::coset_rep(
                    w, g.in1_power.elements, w.add(cs, sym_coset[j]));
                auto it = phi.find(nc);
                if (it == phi.end()) {
                    phi[nc] = ncs;
                    grew = true;
                } else if (it->second != ncs) {
                    throw Error("kmw_finite_field: s_n not well-defined");
                }
            }
    }
    Int km_order = g.milnor.order();
    if (Int(phi.size()) != km_order)
        throw Error("kmw_finite_field: symbols do not span K^M");

    // the fiber product
    for (const auto& [coords, cs] : phi)
        for (std::size_t x : g.in_power.elements)
            if (detail::coset_rep(w, g.in1_power.elements, x) == cs) {
                KmwGroup::Elem e;
                e.a = coords;
                e.w = x;
                g.elems.push_back(e);
            }
    std::sort(g.elems.begin(), g.elems.end());

    std::map<KmwGroup::Elem, std::size_t> pos;
    for (std::size_t i = 0; i < g.elems.size(); ++i) pos[g.elems[i]] = i;
    auto add = [&](std::size_t i, std::size_t j) {
        KmwGroup::Elem e;
        e.a = add_coords(g.elems[i].a, g.elems[j].a);
        e.w = w.add(g.elems[i].w, g.elems[j].w);
        return pos.at(e);
    };
    auto neg = [&](std::size_t i) {
        std::vector<Int> na(g.elems[i].a.size());
        for (std::size_t l = 0; l < na.size(); ++l) {
            na[l] = -g.elems[i].a[l];
            if (moduli[l] != 0) {
                na[l] %= moduli[l];
                if (na[l] < 0) na[l] += moduli[l];
            }
        }
        KmwGroup::Elem e;
        e.a = na;
        e.w = w.neg(g.elems[i].w);
        return pos.at(e);
    };
    auto nm = [&](std::size_t i) {
        std::ostringstream os;
        os << "(";
        for (std::size_t l = 0; l < g.elems[i].a.size(); ++l)
            os << (l ? "," : "") << g.elems[i].a[l].str();
        os << ";" << render_witt(w.elems[g.elems[i].w]) << ")";
        return os.str();
    };
    std::size_t zidx = pos.at(g.zero());
    if (zidx != 0) throw Error("kmw_finite_field: zero element not first");
    g.pres = present_finite_group(g.elems.size(), 0, add, neg, nm);
    return g;
}

// ---------------------------------------------------------------------------
// Exactness of 0 -> h K^MW_n -> K^MW_n --eta--> K^MW_{n-1} over F_q
// ---------------------------------------------------------------------------

struct ExactnessReport {
    int q = 0;
    int n = 0;
    Int milnor_order;
    Int in_order;
    Int in1_order;
    Int kmw_order;
    Int h_kmw_order;
    Int ker_eta_order;
    bool exact = false;
    std::string milnor_structure;
    std::string kmw_structure;
};

inline ExactnessReport eta_sequence_exactness_finite(int q, int n = 2) {
    KmwGroup g = kmw_finite_field(q, n);
    const WittRing& w = g.in_power.ring;
    std::vector<Int> moduli = g.milnor.coordinate_moduli();

    // eta sends (a, x) to (0, x) in K^MW_{n-1}; its kernel here is the set of
    // elements with vanishing Witt part.
    std::set<std::size_t> ker;
    for (std::size_t i = 0; i < g.elems.size(); ++i)
        if (w.elems[g.elems[i].w].is_zero()) ker.insert(i);

    // h acts by (a, x) |-> (2a, 0)
    std::map<KmwGroup::Elem, std::size_t> pos;
    for (std::size_t i = 0; i < g.elems.size(); ++i) pos[g.elems[i]] = i;
    std::set<std::size_t> himg;
    for (const auto& e : g.elems) {
        KmwGroup::Elem he;
        he.a.resize(e.a.size());
        for (std::size_t l = 0; l < e.a.size(); ++l) {
            he.a[l] = 2 * e.a[l];
            if (moduli[l] != 0) he.a[l] %= moduli[l];
        }
        he.w = 0;
        auto it = pos.find(he);
        if (it == pos.end())
            throw Error("eta_sequence_exactness_finite: h image escapes K^MW");
        himg.insert(it->second);
    }

    ExactnessReport rep;
    rep.q = q;
    rep.n = n;
    rep.milnor_order = g.milnor.order();
    rep.in_order = Int(g.in_power.elements.size());
    rep.in1_order = Int(g.in1_power.elements.size());
    rep.kmw_order = Int(g.elems.size());
    rep.h_kmw_order = Int(himg.size());
    rep.ker_eta_order = Int(ker.size());
    rep.exact = ker == himg;
    rep.milnor_structure = g.milnor.structure();
    rep.kmw_structure = g.pres.structure();
    return rep;
}

} // namespace mwk
