#pragma once

// Command dispatcher for the mwk tool.  Exit codes: 0 verified/success,
// 1 refuted, 2 usage or parse error, 3 resource bound exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "derive.hpp"
#include "hurewicz.hpp"
#include "presentations.hpp"
#include "rand_gen.hpp"

namespace mwk {

namespace cli_detail {

using nlohmann::json;

inline json json_coeff(const Int& c) {
    static const Int lo = -(Int(1) << 53), hi = Int(1) << 53;
    if (c > lo && c < hi) return json(static_cast<std::int64_t>(c));
    return json(c.str());
}

inline json mw_to_json(const MwExpr& e) {
    json terms = json::array();
    for (const auto& [m, c] : e.terms()) {
        json brackets = json::array();
        for (const auto& u : m.brackets) brackets.push_back(render_unit(u));
        terms.push_back(
            {{"coeff", json_coeff(c)}, {"eta", m.eta}, {"brackets", brackets}});
    }
    return terms;
}

inline json trace_to_json(const RewriteTrace& tr) {
    json steps = json::array();
    for (const auto& s : tr.steps)
        steps.push_back({{"rule", rule_name(s.rule)},
                         {"site", s.site},
                         {"monomial", render_monomial(s.redex)},
                         {"identity", rule_equation(s.rule)},
                         {"before", render_mw(s.before)},
                         {"after", render_mw(s.after)}});
    return steps;
}

inline void print_trace(std::ostream& out, const RewriteTrace& tr) {
    for (std::size_t i = 0; i < tr.steps.size(); ++i) {
        const auto& s = tr.steps[i];
        out << "  step " << i + 1 << ": " << rule_name(s.rule) << " at site "
            << s.site << " on " << render_monomial(s.redex) << "   ["
            << rule_equation(s.rule) << "]\n";
        out << "    = " << render_mw(s.after) << "\n";
    }
}

inline std::string value_nf(const Value& v) {
    if (std::holds_alternative<MwExpr>(v))
        return render_mw(std::get<MwExpr>(v));
    return render_fa1(std::get<Fa1Element>(v));
}

inline Assignment parse_assignment(const std::string& text,
                                   const FieldBackend& k) {
    Assignment a;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw Error("bad assignment entry '" + item + "' (want NAME=VALUE)");
        std::string name = item.substr(0, eq);
        std::string val = item.substr(eq + 1);
        if (k.is_real()) {
            if (val == "+" || val == "+1" || val == "1")
                a[name] = 1;
            else if (val == "-" || val == "-1")
                a[name] = -1;
            else
                throw Error("real backend values are + or -");
        } else {
            int v = std::stoi(val) % k.q();
            if (v < 0) v += k.q();
            if (v == 0) throw Error("assignment value must be a unit");
            a[name] = v;
        }
    }
    return a;
}

struct Common {
    bool json_out = false;
    bool trace = false;
    std::uint64_t seed = 1;
    std::size_t term_bound = 0; // 0: default
    NormalizeOptions norm() const {
        NormalizeOptions o;
        if (term_bound != 0) o.max_terms = term_bound;
        return o;
    }
};

} // namespace cli_detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
    using cli_detail::json;
    CLI::App app{"mwk: a calculator for Milnor-Witt K-theory of a generic field,\n"
                 "the fundamental group of the projective line, and its Hurewicz map"};
    app.require_subcommand(1);

    cli_detail::Common common;
    app.add_flag("--json", common.json_out, "emit a JSON report");
    app.add_flag("--trace", common.trace, "include the rewrite trace");
    app.add_option("--seed", common.seed, "seed for randomized commands");
    app.add_option("--term-bound", common.term_bound,
                   "term budget for normalization");

    // normalize
    std::string nz_expr;
    auto* nz = app.add_subcommand("normalize", "normalize an expression");
    nz->add_option("expr", nz_expr, "expression")->required();

    // check
    std::vector<std::string> check_args;
    auto* ck = app.add_subcommand("check", "verify lhs = rhs");
    ck->add_option("sides", check_args, "LHS [=] RHS")->expected(2, 3);

    // derive
    std::string derive_id;
    auto* dv = app.add_subcommand("derive", "replay a named derivation chain");
    dv->add_option("id", derive_id, "lemma-hk2 | lemma-explicit-h | thm-fa1-ii")
        ->required();

    // commutator
    std::vector<std::string> comm_args;
    auto* cm = app.add_subcommand("commutator", "commutator of two F(1) elements");
    cm->add_option("elements", comm_args, "X Y")->expected(2);

    // hurewicz
    std::string hw_expr;
    auto* hw = app.add_subcommand("hurewicz", "Hurewicz image of an F(1) element");
    hw->add_option("expr", hw_expr, "F(1) element")->required();

    // member-hk2
    std::string mb_expr;
    auto* mb = app.add_subcommand("member-hk2",
                                  "decide membership in h*K_2^MW with witness");
    mb->add_option("expr", mb_expr, "degree-2 expression")->required();

    // kmw
    std::string kmw_field = "F3";
    int kmw_degree = 2;
    auto* km = app.add_subcommand("kmw", "K^MW_n of a finite field, brute-forced");
    km->add_option("--field", kmw_field, "F3|F5|F7 (F9 for degree <= 2)");
    km->add_option("--degree", kmw_degree, "n in 1..3");

    // exactness
    std::string ex_field = "F3";
    int ex_degree = 2;
    auto* ex = app.add_subcommand(
        "exactness", "finite-field exactness of 0 -> hK^MW_n -> K^MW_n -> K^MW_{n-1}");
    ex->add_option("--field", ex_field, "F3|F5|F7");
    ex->add_option("--degree", ex_degree,
                   "n in 1..3 (degrees other than 2 are experimental)");

    // probe
    std::string pr_expr, pr_field = "F3", pr_assign;
    int pr_trials = 8;
    auto* pr = app.add_subcommand("probe",
                                  "evaluate an expression in the Witt ring of a backend");
    pr->add_option("expr", pr_expr, "expression")->required();
    pr->add_option("--field", pr_field, "F3|F5|F7|R");
    pr->add_option("--trials", pr_trials, "number of random assignments");
    pr->add_option("--assign", pr_assign, "explicit assignment, e.g. U=2,V=-1");

    // probe-compare
    std::vector<std::string> pc_exprs;
    std::string pc_field = "F3";
    int pc_trials = 32;
    auto* pc = app.add_subcommand("probe-compare",
                                  "compare two expressions under random probes");
    pc->add_option("exprs", pc_exprs, "E1 E2")->expected(2);
    pc->add_option("--field", pc_field, "F3|F5|F7|R");
    pc->add_option("--trials", pc_trials, "number of random assignments");

    std::vector<const char*> argv;
    argv.push_back("mwk");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    NormalizeOptions norm = common.norm();
    try {
        if (*nz) {
            Value v = eval_text(nz_expr, norm);
            if (std::holds_alternative<MwExpr>(v)) {
                RewriteTrace tr;
                MwExpr nf = normalize(std::get<MwExpr>(v), common.trace ? &tr : nullptr,
                                      norm);
                if (common.json_out) {
                    json rep = {{"command", "normalize"},
                                {"inputs", {nz_expr}},
                                {"normal_forms", {render_mw(nf)}},
                                {"terms", cli_detail::mw_to_json(nf)},
                                {"verdict", "computed"}};
                    if (common.trace) rep["trace"] = cli_detail::trace_to_json(tr);
                    out << rep.dump(2) << "\n";
                } else {
                    out << render_mw(nf) << "\n";
                    if (common.trace) cli_detail::print_trace(out, tr);
                }
            } else {
                const Fa1Element& x = std::get<Fa1Element>(v);
                if (common.json_out) {
                    json rep = {{"command", "normalize"},
                                {"inputs", {nz_expr}},
                                {"normal_forms", {render_fa1(x)}},
                                {"k2_terms", cli_detail::mw_to_json(x.k2)},
                                {"unit", render_unit(x.unit)},
                                {"verdict", "computed"}};
                    out << rep.dump(2) << "\n";
                } else {
                    out << render_fa1(x) << "\n";
                }
            }
            return 0;
        }

        if (*ck) {
            if (check_args.size() == 3) {
                if (check_args[1] != "=")
                    throw Error("check: middle argument must be '='");
                check_args.erase(check_args.begin() + 1);
            }
            Value a = eval_text(check_args[0], norm);
            Value b = eval_text(check_args[1], norm);
            bool both_mw = std::holds_alternative<MwExpr>(a) &&
                           std::holds_alternative<MwExpr>(b);
            bool ok;
            std::string nfa, nfb;
            RewriteTrace tr;
            if (both_mw) {
                const MwExpr& ea = std::get<MwExpr>(a);
                const MwExpr& eb = std::get<MwExpr>(b);
                MwExpr diff =
                    normalize(ea - eb, common.trace ? &tr : nullptr, norm);
                ok = diff.is_zero();
                nfa = render_mw(normalize(ea, nullptr, norm));
                nfb = render_mw(normalize(eb, nullptr, norm));
            } else {
                auto to_fa1 = [&norm](const Value& v) {
                    if (std::holds_alternative<Fa1Element>(v))
                        return std::get<Fa1Element>(v);
                    return Fa1Element(std::get<MwExpr>(v), FormalUnit::one(),
                                      norm);
                };
                Fa1Element xa = to_fa1(a), xb = to_fa1(b);
                ok = fa1_equal(xa, xb, norm);
                nfa = render_fa1(xa);
                nfb = render_fa1(xb);
            }
            if (common.json_out) {
                json rep = {{"command", "check"},
                            {"inputs", {check_args[0], check_args[1]}},
                            {"normal_forms", {nfa, nfb}},
                            {"verdict", ok ? "verified" : "refuted"}};
                if (common.trace && both_mw)
                    rep["trace"] = cli_detail::trace_to_json(tr);
                out << rep.dump(2) << "\n";
            } else {
                out << "lhs = " << nfa << "\n";
                out << "rhs = " << nfb << "\n";
                if (common.trace && both_mw) {
                    out << "trace of normalize(lhs - rhs):\n";
                    cli_detail::print_trace(out, tr);
                }
                out << (ok ? "VERIFIED" : "REFUTED") << "\n";
            }
            return ok ? 0 : 1;
        }

        if (*dv) {
            Derivation d = derive(derive_id, norm);
            if (common.json_out) {
                json steps = json::array();
                for (const auto& s : d.steps)
                    steps.push_back({{"lhs", s.lhs},
                                     {"rhs", s.rhs},
                                     {"note", s.note},
                                     {"lhs_nf", s.lhs_nf},
                                     {"rhs_nf", s.rhs_nf},
                                     {"verified", s.ok}});
                json rep = {{"command", "derive"},
                            {"inputs", {derive_id}},
                            {"title", d.title},
                            {"steps", steps},
                            {"verdict", d.all_ok ? "verified" : "refuted"}};
                out << rep.dump(2) << "\n";
            } else {
                out << d.title << "\n";
                int i = 0;
                for (const auto& s : d.steps) {
                    out << "  (" << ++i << ") " << s.lhs << "  =  " << s.rhs
                        << "\n";
                    out << "      " << (s.ok ? "verified" : "REFUTED") << "  ["
                        << s.note << "]\n";
                    if (!s.ok) {
                        out << "      lhs normal form: " << s.lhs_nf << "\n";
                        out << "      rhs normal form: " << s.rhs_nf << "\n";
                    }
                }
                out << (d.all_ok ? "all steps verified" : "chain REFUTED")
                    << "\n";
            }
            return d.all_ok ? 0 : 1;
        }

        if (*cm) {
            auto to_fa1 = [&norm](const Value& v) {
                if (std::holds_alternative<Fa1Element>(v))
                    return std::get<Fa1Element>(v);
                return Fa1Element(std::get<MwExpr>(v), FormalUnit::one(), norm);
            };
            Fa1Element x = to_fa1(eval_text(comm_args[0], norm));
            Fa1Element y = to_fa1(eval_text(comm_args[1], norm));
            Fa1Element c = fa1_commutator(x, y, norm);
            Hk2Result mem = hk2_member(c.k2, {}, Hk2Options{2, 4096, norm});
            if (common.json_out) {
                json rep = {{"command", "commutator"},
                            {"inputs", {comm_args[0], comm_args[1]}},
                            {"normal_forms", {render_fa1(c)}},
                            {"gamma", render_unit(c.unit)},
                            {"hk2_member", mem.member},
                            {"verdict", "computed"}};
                if (mem.member) rep["witness"] = render_mw(mem.witness);
                out << rep.dump(2) << "\n";
            } else {
                out << render_fa1(c) << "\n";
                out << "gamma = " << render_unit(c.unit) << "\n";
                out << "k2 part in h*K_2^MW: " << (mem.member ? "yes" : "no");
                if (mem.member)
                    out << ", witness beta = " << render_mw(mem.witness)
                        << " with k2 = h*beta";
                out << "\n";
            }
            return 0;
        }

        if (*hw) {
            Value v = eval_text(hw_expr, norm);
            Fa1Element x = std::holds_alternative<Fa1Element>(v)
                               ? std::get<Fa1Element>(v)
                               : Fa1Element(std::get<MwExpr>(v),
                                            FormalUnit::one(), norm);
            RewriteTrace tr;
            MwExpr raw = eta_times(tau(x.k2, norm));
            raw.add_term(MwMonomial{0, {x.unit}}, 1);
            MwExpr img = normalize(raw, common.trace ? &tr : nullptr, norm);
            if (common.json_out) {
                json rep = {{"command", "hurewicz"},
                            {"inputs", {hw_expr}},
                            {"input_nf", render_fa1(x)},
                            {"normal_forms", {render_mw(img)}},
                            {"verdict", "computed"}};
                if (common.trace) rep["trace"] = cli_detail::trace_to_json(tr);
                out << rep.dump(2) << "\n";
            } else {
                out << "input: " << render_fa1(x) << "\n";
                out << "H = " << render_mw(img) << "\n";
                if (common.trace) cli_detail::print_trace(out, tr);
            }
            return 0;
        }

        if (*mb) {
            Value v = eval_text(mb_expr, norm);
            if (!std::holds_alternative<MwExpr>(v))
                throw Error("member-hk2 expects a K_2^MW expression");
            Hk2Result mem =
                hk2_member(std::get<MwExpr>(v), {}, Hk2Options{2, 4096, norm});
            if (common.json_out) {
                json rep = {{"command", "member-hk2"},
                            {"inputs", {mb_expr}},
                            {"normal_forms",
                             {render_mw(normalize(std::get<MwExpr>(v), nullptr,
                                                  norm))}},
                            {"verdict", mem.member ? "verified" : "refuted"}};
                if (mem.member) rep["witness"] = render_mw(mem.witness);
                out << rep.dump(2) << "\n";
            } else {
                if (mem.member)
                    out << "member of h*K_2^MW; witness beta = "
                        << render_mw(mem.witness) << "\n";
                else
                    out << "not a member of h*K_2^MW\n";
            }
            return mem.member ? 0 : 1;
        }

        if (*km) {
            if (kmw_field.size() < 2 || kmw_field[0] != 'F')
                throw BackendError("kmw: finite fields only");
            int q = std::stoi(kmw_field.substr(1));
            KmwGroup g = kmw_finite_field(q, kmw_degree);
            if (common.json_out) {
                json diag = json::array();
                for (const auto& d : g.milnor.full_diag())
                    diag.push_back(cli_detail::json_coeff(d));
                json rep = {{"command", "kmw"},
                            {"field", kmw_field},
                            {"degree", kmw_degree},
                            {"milnor_generators", g.milnor.gens().size()},
                            {"milnor_relations", g.milnor.rels().rows},
                            {"milnor_diagonal", diag},
                            {"milnor_structure", g.milnor.structure()},
                            {"ideal_power_order", g.in_power.elements.size()},
                            {"kmw_order", g.elems.size()},
                            {"kmw_structure", g.pres.structure()},
                            {"verdict", "computed"}};
                out << rep.dump(2) << "\n";
            } else {
                out << "K^M_" << kmw_degree << "(" << kmw_field
                    << "): " << g.milnor.gens().size() << " symbol generators, "
                    << g.milnor.rels().rows << " relations\n";
                out << "  Smith diagonal: ";
                for (const auto& d : g.milnor.full_diag()) out << d.str() << " ";
                out << "\n  structure: " << g.milnor.structure() << "\n";
                out << "I^" << kmw_degree << "(" << kmw_field
                    << "): order " << g.in_power.elements.size() << ", structure "
                    << g.in_power.pres.structure() << "\n";
                out << "K^MW_" << kmw_degree << "(" << kmw_field
                    << "): order " << g.elems.size() << ", structure "
                    << g.pres.structure() << "\n";
            }
            return 0;
        }

        if (*ex) {
            if (ex_field.size() < 2 || ex_field[0] != 'F')
                throw BackendError("exactness: finite fields only");
            int q = std::stoi(ex_field.substr(1));
            ExactnessReport rep = eta_sequence_exactness_finite(q, ex_degree);
            if (common.json_out) {
                json j = {{"command", "exactness"},
                          {"field", ex_field},
                          {"degree", ex_degree},
                          {"milnor_order", cli_detail::json_coeff(rep.milnor_order)},
                          {"ideal_power_order", cli_detail::json_coeff(rep.in_order)},
                          {"next_ideal_power_order",
                           cli_detail::json_coeff(rep.in1_order)},
                          {"kmw_order", cli_detail::json_coeff(rep.kmw_order)},
                          {"h_kmw_order", cli_detail::json_coeff(rep.h_kmw_order)},
                          {"ker_eta_order", cli_detail::json_coeff(rep.ker_eta_order)},
                          {"milnor_structure", rep.milnor_structure},
                          {"kmw_structure", rep.kmw_structure},
                          {"verdict", rep.exact ? "verified" : "refuted"}};
                out << j.dump(2) << "\n";
            } else {
                out << "0 -> h K^MW_" << ex_degree << " -> K^MW_" << ex_degree
                    << " --eta--> K^MW_" << ex_degree - 1 << "   over "
                    << ex_field << "\n";
                out << "  |K^M_" << ex_degree << "| = " << rep.milnor_order.str()
                    << " (" << rep.milnor_structure << ")"
                    << ", |I^" << ex_degree << "| = " << rep.in_order.str()
                    << ", |I^" << ex_degree + 1 << "| = " << rep.in1_order.str()
                    << "\n";
                out << "  |K^MW_" << ex_degree << "| = " << rep.kmw_order.str()
                    << " (" << rep.kmw_structure << ")"
                    << ", |h K^MW| = " << rep.h_kmw_order.str()
                    << ", |ker eta| = " << rep.ker_eta_order.str() << "\n";
                out << (rep.exact ? "EXACT" : "NOT EXACT") << "\n";
            }
            return rep.exact ? 0 : 1;
        }

        if (*pr) {
            Value v = eval_text(pr_expr, norm);
            if (!std::holds_alternative<MwExpr>(v))
                throw Error("probe expects a K^MW expression (no theta)");
            const MwExpr& e = std::get<MwExpr>(v);
            FieldBackend k = FieldBackend::make(pr_field);
            std::set<std::string> vars = e.indeterminates();
            json jresults = json::array();
            if (!pr_assign.empty()) {
                Assignment a = cli_detail::parse_assignment(pr_assign, k);
                WittClass w = probe(e, a, k);
                if (common.json_out) {
                    jresults.push_back(render_witt(w));
                    json rep = {{"command", "probe"},
                                {"inputs", {pr_expr}},
                                {"field", pr_field},
                                {"results", jresults},
                                {"verdict", "computed"}};
                    out << rep.dump(2) << "\n";
                } else {
                    out << render_witt(w) << "\n";
                }
                return 0;
            }
            Rng rng(common.seed);
            std::vector<std::string> lines;
            for (int t = 0; t < pr_trials; ++t) {
                Assignment a = random_assignment(rng, vars, k);
                WittClass w = probe(e, a, k);
                std::string asg;
                for (const auto& [nm, val] : a) {
                    if (!asg.empty()) asg += ",";
                    asg += nm + "=" +
                           (k.is_real() ? (val > 0 ? "+" : "-")
                                        : std::to_string(val));
                }
                lines.push_back(asg.empty() ? render_witt(w)
                                            : asg + "  ->  " + render_witt(w));
                jresults.push_back({{"assignment", asg}, {"witt", render_witt(w)}});
            }
            if (common.json_out) {
                json rep = {{"command", "probe"},
                            {"inputs", {pr_expr}},
                            {"field", pr_field},
                            {"results", jresults},
                            {"verdict", "computed"}};
                out << rep.dump(2) << "\n";
            } else {
                for (const auto& l : lines) out << l << "\n";
            }
            return 0;
        }

        if (*pc) {
            Value va = eval_text(pc_exprs[0], norm);
            Value vb = eval_text(pc_exprs[1], norm);
            FieldBackend k = FieldBackend::make(pc_field);
            Rng rng(common.seed);
            auto vars_of = [](const Value& v) {
                if (std::holds_alternative<MwExpr>(v))
                    return std::get<MwExpr>(v).indeterminates();
                std::set<std::string> s =
                    std::get<Fa1Element>(v).k2.indeterminates();
                for (const auto& [nm, e2] : std::get<Fa1Element>(v).unit.exps)
                    s.insert(nm);
                return s;
            };
            std::set<std::string> vars = vars_of(va);
            for (const auto& s : vars_of(vb)) vars.insert(s);
            int agree = 0;
            for (int t = 0; t < pc_trials; ++t) {
                Assignment a = random_assignment(rng, vars, k);
                bool same;
                if (std::holds_alternative<MwExpr>(va) &&
                    std::holds_alternative<MwExpr>(vb)) {
                    same = probe(std::get<MwExpr>(va), a, k) ==
                           probe(std::get<MwExpr>(vb), a, k);
                } else if (std::holds_alternative<Fa1Element>(va) &&
                           std::holds_alternative<Fa1Element>(vb)) {
                    const Fa1Element& xa = std::get<Fa1Element>(va);
                    const Fa1Element& xb = std::get<Fa1Element>(vb);
                    same = probe(xa.k2, a, k) == probe(xb.k2, a, k) &&
                           eval_unit(k, xa.unit, a) == eval_unit(k, xb.unit, a);
                } else {
                    throw Error("probe-compare: both sides must be the same kind");
                }
                agree += same ? 1 : 0;
            }
            double rate = pc_trials == 0 ? 1.0 : double(agree) / pc_trials;
            if (common.json_out) {
                json rep = {{"command", "probe-compare"},
                            {"inputs", {pc_exprs[0], pc_exprs[1]}},
                            {"field", pc_field},
                            {"trials", pc_trials},
                            {"agreements", agree},
                            {"verdict", agree == pc_trials ? "verified" : "refuted"}};
                out << rep.dump(2) << "\n";
            } else {
                out << agree << "/" << pc_trials << " probes agree ("
                    << 100.0 * rate << "%)\n";
            }
            return agree == pc_trials ? 0 : 1;
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceLimit& e) {
        err << "resource bound: " << e.what() << "\n";
        return 3;
    } catch (const BasisBound& e) {
        err << "resource bound: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "no command\n";
    return 2;
}

} // namespace mwk
