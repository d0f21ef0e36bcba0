#pragma once

// Seeded generators for fuzzing: random formal units, monomials, expressions,
// assignments, and per-rule redex samples.  Everything is driven by one
// mt19937_64 so runs are reproducible from a single seed.

#include <random>
#include <string>
#include <vector>

#include "fields.hpp"
#include "rewrite.hpp"

namespace mwk {

struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed = 0x6d776bULL) : eng(seed) {}

    int range(int lo, int hi) { // inclusive
        return std::uniform_int_distribution<int>(lo, hi)(eng);
    }
    bool coin() { return range(0, 1) == 1; }
    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(range(0, static_cast<int>(v.size()) - 1))];
    }
};

struct ExprGenOptions {
    std::vector<std::string> pool = {"U", "V", "W", "X"};
    int max_terms = 5;
    int max_brackets = 4;
    int max_eta = 3;
    int max_coeff = 9;
    bool composite_units = true; // allow signs, powers, products in brackets
};

inline FormalUnit random_unit(Rng& rng, const ExprGenOptions& opt) {
    if (!opt.composite_units) {
        if (rng.range(0, 7) == 0) return FormalUnit::minus_one();
        return FormalUnit::ind(rng.pick(opt.pool));
    }
    FormalUnit u;
    u.sign = rng.range(0, 3) == 0;
    int atoms = rng.range(0, 2);
    for (int i = 0; i < atoms; ++i) {
        int e = 0;
        while (e == 0) e = rng.range(-2, 2);
        u = unit_mul(u, FormalUnit::ind(rng.pick(opt.pool), e));
    }
    return u;
}

inline MwMonomial random_monomial(Rng& rng, const ExprGenOptions& opt) {
    MwMonomial m;
    m.eta = rng.range(0, opt.max_eta);
    int nb = rng.range(0, opt.max_brackets);
    for (int i = 0; i < nb; ++i) m.brackets.push_back(random_unit(rng, opt));
    return m;
}

inline MwExpr random_expr(Rng& rng, const ExprGenOptions& opt) {
    MwExpr e;
    int nt = rng.range(1, opt.max_terms);
    for (int i = 0; i < nt; ++i) {
        int c = 0;
        while (c == 0) c = rng.range(-opt.max_coeff, opt.max_coeff);
        e.add_term(random_monomial(rng, opt), c);
    }
    return e;
}

// random degree-2 expression in normal-form monomials over the given pool
inline MwExpr random_degree2_expr(Rng& rng, const std::vector<std::string>& pool,
                                  int max_terms = 4, int max_coeff = 5) {
    // normal-form monomial shapes of degree 2 (eta, minus-ones, indets)
    struct Shape {
        int eta, j, r;
    };
    std::vector<Shape> shapes;
    for (int eta = 0; eta <= static_cast<int>(pool.size()) - 2 + 2; ++eta) {
        int nb = eta + 2;
        int jmax = eta == 0 ? 2 : (eta == 1 ? 1 : 0);
        for (int j = 0; j <= jmax && j <= nb; ++j) {
            int r = nb - j;
            if (r <= static_cast<int>(pool.size()))
                shapes.push_back({eta, j, r});
        }
    }
    MwExpr e;
    int nt = rng.range(1, max_terms);
    for (int i = 0; i < nt; ++i) {
        const Shape& s = rng.pick(shapes);
        MwMonomial m;
        m.eta = s.eta;
        for (int l = 0; l < s.j; ++l)
            m.brackets.push_back(FormalUnit::minus_one());
        std::vector<std::string> names = pool;
        for (int l = 0; l < s.r; ++l) {
            int idx = rng.range(0, static_cast<int>(names.size()) - 1);
            m.brackets.push_back(FormalUnit::ind(names[idx]));
            names.erase(names.begin() + idx);
        }
        std::sort(m.brackets.begin() + s.j, m.brackets.end());
        int c = 0;
        while (c == 0) c = rng.range(-max_coeff, max_coeff);
        e.add_term(m, c);
    }
    return e;
}

inline Assignment random_assignment(Rng& rng, const std::set<std::string>& vars,
                                    const FieldBackend& k) {
    Assignment a;
    std::vector<int> units = k.units();
    for (const auto& v : vars) a[v] = rng.pick(units);
    return a;
}

// A monomial whose unique redex is the requested rule, for rule-by-rule
// probe-invariance fuzzing.
inline MwMonomial rule_redex_sample(Rng& rng, Rule rule,
                                    const ExprGenOptions& opt) {
    // sorted distinct indeterminate atoms as neutral filler
    auto filler = [&rng, &opt](int n) {
        std::vector<std::string> names = opt.pool;
        std::vector<FormalUnit> out;
        for (int i = 0; i < n && !names.empty(); ++i) {
            int idx = rng.range(0, static_cast<int>(names.size()) - 1);
            out.push_back(FormalUnit::ind(names[idx]));
            names.erase(names.begin() + idx);
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    MwMonomial m;
    switch (rule) {
        case Rule::R1: {
            m.brackets = filler(rng.range(0, 2));
            FormalUnit composite;
            do {
                composite = random_unit(rng, opt);
            } while (composite.is_atom() || composite.is_inverse_atom() ||
                     composite.is_one());
            std::size_t pos = static_cast<std::size_t>(
                rng.range(0, static_cast<int>(m.brackets.size())));
            m.brackets.insert(m.brackets.begin() + pos, composite);
            return m;
        }
        case Rule::R2: {
            m.brackets = filler(rng.range(0, 2));
            std::size_t pos = static_cast<std::size_t>(
                rng.range(0, static_cast<int>(m.brackets.size())));
            m.brackets.insert(m.brackets.begin() + pos, FormalUnit::one());
            return m;
        }
        case Rule::R7: {
            m.brackets = filler(rng.range(0, 2));
            std::size_t pos = static_cast<std::size_t>(
                rng.range(0, static_cast<int>(m.brackets.size())));
            m.brackets.insert(m.brackets.begin() + pos,
                              FormalUnit::ind(rng.pick(opt.pool), -1));
            return m;
        }
        case Rule::R4: {
            auto b = filler(rng.range(2, 3));
            if (rng.coin()) b.insert(b.begin(), FormalUnit::minus_one());
            std::size_t i = static_cast<std::size_t>(
                rng.range(0, static_cast<int>(b.size()) - 2));
            std::swap(b[i], b[i + 1]);
            m.brackets = b;
            return m;
        }
        case Rule::R5: {
            auto b = filler(rng.range(1, 3));
            std::size_t i = static_cast<std::size_t>(
                rng.range(0, static_cast<int>(b.size()) - 1));
            if (!b[i].is_indeterminate()) i = b.size() - 1;
            b.insert(b.begin() + i, b[i]);
            m.brackets = b;
            return m;
        }
        case Rule::R6: {
            m.eta = rng.range(2, 3);
            m.brackets = filler(rng.range(0, 2));
            m.brackets.insert(m.brackets.begin(), FormalUnit::minus_one());
            return m;
        }
        case Rule::R8: {
            m.eta = 1;
            m.brackets = filler(rng.range(0, 2));
            m.brackets.insert(m.brackets.begin(), FormalUnit::minus_one());
            m.brackets.insert(m.brackets.begin(), FormalUnit::minus_one());
            return m;
        }
    }
    return m;
}

} // namespace mwk
