#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "liemin/groebner.hpp"
#include "liemin/invariants.hpp"
#include "liemin/krylov.hpp"
#include "liemin/model.hpp"
#include "liemin/parse.hpp"
#include "liemin/reduction.hpp"
#include "liemin/semantics.hpp"

using json = nlohmann::ordered_json;
using namespace liemin;

namespace {

constexpr int kOk = 0;
constexpr int kNo = 1;        // semantic "no": refuted / not certified
constexpr int kInputErr = 2;  // bad file, bad expression, bad flags
constexpr int kCap = 3;       // resource cap tripped

std::string jrat(const Rat& r) { return rat_to_string(r); }

json jvec(const RatVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(jrat(x));
    return a;
}

json jrows(const RatRows& rows) {
    json a = json::array();
    for (const auto& r : rows) a.push_back(jvec(r));
    return a;
}

json jpolys(const std::vector<Poly>& ps, const std::vector<std::string>& names) {
    json a = json::array();
    for (const auto& p : ps) a.push_back(p.render(names));
    return a;
}

struct Report {
    json payload;
    std::vector<std::string> warnings;
    std::string command;
    std::string json_path;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    void flush() {
        if (json_path.empty()) return;
        double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
        json doc;
        doc["command"] = command;
        doc["elapsed_ms"] = ms;
        doc["warnings"] = warnings;
        doc["result"] = payload;
        std::ofstream out(json_path);
        out << doc.dump(2) << "\n";
    }
};

Model load_or_die(const std::string& path) {
    Model m = load_model(path);
    m.ivp.validate();
    return m;
}

PolyTemplate linear_template(std::size_t n) {
    PolyTemplate t(n, n);
    for (std::size_t i = 0; i < n; ++i) t.add_term(Monomial::var(n, i), LinExpr::param(i));
    return t;
}

// One fresh parameter per monomial of total degree <= d, the constant
// monomial included (a law like x^2 + y^2 - 1 needs it).
PolyTemplate degree_template(std::size_t n, std::size_t d) {
    std::vector<Monomial> monos;
    // Enumerate exponent vectors with sum <= d.
    std::vector<uint32_t> e(n, 0);
    while (true) {
        uint64_t deg = 0;
        for (auto x : e) deg += x;
        if (deg <= d) {
            Monomial m = Monomial::one(n);
            m.exps = e;
            monos.push_back(m);
        }
        // odometer increment bounded by d
        std::size_t i = 0;
        for (; i < n; ++i) {
            if (e[i] < d) {
                ++e[i];
                break;
            }
            e[i] = 0;
        }
        if (i == n) break;
    }
    PolyTemplate t(n, monos.size());
    for (std::size_t k = 0; k < monos.size(); ++k) t.add_term(monos[k], LinExpr::param(k));
    return t;
}

std::string automaton_dot(const WeightedAutomaton& wa) {
    std::ostringstream os;
    os << "digraph automaton {\n";
    for (std::size_t i = 0; i < wa.states.size(); ++i) {
        os << "  s" << i << " [label=\"" << wa.states[i].render(wa.var_names) << " | "
           << jrat(wa.weights[i]) << "\"";
        if (wa.frontier[i]) os << " style=dashed";
        os << "];\n";
    }
    for (const auto& t : wa.transitions)
        os << "  s" << t.from << " -> s" << t.to << " [label=\"" << jrat(t.label) << "\"];\n";
    os << "}\n";
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string reduced_model_text(const ReducedSystem& r) {
    std::ostringstream os;
    os.precision(17);
    auto names = r.y_names();
    os << "vars: ";
    for (std::size_t k = 0; k < r.l; ++k) os << (k ? ", " : "") << names[k];
    os << "\n";
    if (r.mode == ReductionMode::OrthogonalRational) {
        for (std::size_t k = 0; k < r.l; ++k)
            os << names[k] << "' = " << r.field[k].render(names) << "\n";
        os << "init: ";
        for (std::size_t k = 0; k < r.l; ++k)
            os << (k ? ", " : "") << names[k] << "=" << jrat(r.y0[k]);
        os << "\n";
    } else {
        for (std::size_t k = 0; k < r.l; ++k)
            os << names[k] << "' = " << r.fieldf[k].render(names) << "\n";
        os << "init: ";
        for (std::size_t k = 0; k < r.l; ++k)
            os << (k ? ", " : "") << names[k] << "=" << r.y0f[k];
        os << "\n";
    }
    return os.str();
}

int run(int argc, char** argv) {
    CLI::App app{"polynomial ODE conservation laws, minimization and linearization"};
    app.require_subcommand(1);

    std::string model_path, template_expr, mode = "rational", json_path, out_path;
    long degree = -1;
    std::size_t order = 3;
    long pseudoideal = -100;  // sentinel: flag absent
    std::size_t cap = 500;
    std::size_t depth = 10;
    double t_end = 1.0;
    std::string p_expr, q_expr;
    std::vector<std::string> gen_exprs, obs_exprs;

    auto add_common = [&](CLI::App* c) {
        c->add_option("model", model_path, "model file")->required();
        c->add_option("--json", json_path, "write a JSON report to PATH");
        c->add_option("--cap", cap, "iteration safety cap");
    };

    auto* ce = app.add_subcommand("check-equiv", "decide p(x(t)) == q(x(t))");
    add_common(ce);
    ce->add_option("p", p_expr)->required();
    ce->add_option("q", q_expr)->required();

    auto* inv = app.add_subcommand("invariants", "template conservation laws (double chain)");
    add_common(inv);
    inv->add_option("--template", template_expr, "explicit template expression");
    inv->add_option("--degree", degree, "all monomials of degree <= d, one parameter each");
    inv->add_option("--pseudoideal", pseudoideal,
                    "use pseudoideal pre-checks with multiplier degree K (K<0: default bound)");

    auto* cert = app.add_subcommand("certify", "check an invariant-ideal certificate");
    add_common(cert);
    cert->add_option("generators", gen_exprs, "ideal generators")->required();

    auto* mini = app.add_subcommand("minimize", "exact minimal linear aggregation");
    add_common(mini);
    mini->add_option("--mode", mode, "rational|float")
        ->check(CLI::IsMember({"rational", "float"}));
    mini->add_option("--out", out_path, "write the reduced model here");

    auto* lin = app.add_subcommand("linearize", "order-m Krylov linearization");
    add_common(lin);
    lin->add_option("observables", obs_exprs, "observable polynomials")->required();
    lin->add_option("--order", order, "Krylov order m");
    lin->add_option("--mode", mode, "rational|float")
        ->check(CLI::IsMember({"rational", "float"}));
    lin->add_option("--out", out_path, "write the linear model here");

    auto* tay = app.add_subcommand("taylor", "exact Taylor prefix of p(x(t))");
    add_common(tay);
    tay->add_option("p", p_expr)->required();
    tay->add_option("--order", order, "number of coefficients");

    auto* integ = app.add_subcommand("integrate", "numeric trajectory as CSV");
    add_common(integ);
    integ->add_option("--tend", t_end, "final time");
    integ->add_option("--out", out_path, "CSV path (default stdout)");

    auto* exau = app.add_subcommand("export-automaton", "weighted automaton view");
    add_common(exau);
    exau->add_option("--depth", depth, "unfolding depth");
    exau->add_option("--out", out_path, "Graphviz path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInputErr;
    }

    Report rep;
    rep.json_path = json_path;
    {
        std::ostringstream cmdline;
        for (int i = 1; i < argc; ++i) cmdline << (i > 1 ? " " : "") << argv[i];
        rep.command = cmdline.str();
    }

    Model model = load_or_die(model_path);
    const auto& names = model.ivp.var_names;
    const std::size_t n = model.ivp.dim();

    int code = kOk;
    if (*ce) {
        Poly p = parse_polynomial(p_expr, names);
        Poly q = parse_polynomial(q_expr, names);
        NaiveResult r = naive_invariant(p - q, model.ivp, cap);
        rep.payload["equivalent"] = r.valid;
        if (r.valid) {
            rep.payload["m"] = r.m;
            rep.payload["groebner_basis"] = jpolys(r.groebner.generators, names);
            std::cout << "equivalent: yes (chain stabilized at m = " << r.m << ")\n";
            std::cout << "invariant ideal Groebner basis:\n";
            for (const auto& g : r.groebner.generators)
                std::cout << "  " << g.render(names) << "\n";
        } else {
            rep.payload["refuted_at"] = r.refuted_j;
            rep.payload["witness"] = jrat(r.witness);
            std::cout << "equivalent: no\n";
            std::cout << "derivative order " << r.refuted_j << " differs at the initial point by "
                      << jrat(r.witness) << "\n";
            code = kNo;
        }
    } else if (*inv) {
        PolyTemplate t;
        if (!template_expr.empty())
            t = parse_template(template_expr, names);
        else if (degree >= 0)
            t = degree_template(n, static_cast<std::size_t>(degree));
        else
            t = linear_template(n);
        DoubleChainOptions opts;
        opts.cap = cap;
        if (pseudoideal != -100) {
            opts.use_pseudoideal = true;
            if (pseudoideal >= 0) opts.pseudoideal_degree = pseudoideal;
        }
        InvariantResult r = model.ivp.field.is_linear() ? double_chain_linear(t, model.ivp, opts)
                                                        : double_chain(t, model.ivp, opts);
        rep.payload["m"] = r.m;
        rep.payload["dim_V"] = r.V_basis.size();
        rep.payload["V_basis"] = jrows(r.V_basis);
        rep.payload["result_template"] = r.result_template.render(names);
        rep.payload["groebner_basis"] = jpolys(r.J_groebner.generators, names);
        std::cout << "chain stabilized at m = " << r.m << ", dim V = " << r.V_basis.size() << "\n";
        std::cout << "result template: " << r.result_template.render(names) << "\n";
        std::cout << "ideal Groebner basis:\n";
        for (const auto& g : r.J_groebner.generators) std::cout << "  " << g.render(names) << "\n";
        if (r.V_basis.empty()) std::cout << "no nontrivial conservation law in this family\n";
    } else if (*cert) {
        std::vector<Poly> gens;
        for (const auto& s : gen_exprs) gens.push_back(parse_polynomial(s, names));
        CertResult r = certify_invariant(gens, model.ivp);
        rep.payload["certified"] = r.certified();
        if (r.certified()) {
            std::cout << "certified: every generator vanishes at the initial point and the ideal "
                         "is closed under the Lie derivative\n";
            json quots = json::array();
            for (std::size_t i = 0; i < gens.size(); ++i) {
                json q;
                q["generator"] = gens[i].render(names);
                q["lie_derivative_quotients"] = jpolys(r.lie_quotients[i], names);
                quots.push_back(q);
            }
            rep.payload["certificates"] = quots;
        } else if (r.verdict == CertResult::Verdict::NonzeroAtInit) {
            std::cout << "not certified: generator " << r.failed_index
                      << " evaluates to " << jrat(r.failed_value) << " at the initial point\n";
            rep.payload["reason"] = "nonzero_at_init";
            rep.payload["generator"] = r.failed_index;
            rep.payload["value"] = jrat(r.failed_value);
            code = kNo;
        } else {
            std::cout << "not certified: the Lie derivative of generator " << r.failed_index
                      << " is not in the ideal\n";
            rep.payload["reason"] = "not_closed";
            rep.payload["generator"] = r.failed_index;
            code = kNo;
        }
    } else if (*mini) {
        ReductionMode rm =
            mode == "float" ? ReductionMode::Orthonormal : ReductionMode::OrthogonalRational;
        DoubleChainOptions opts;
        opts.cap = cap;
        ReducedSystem r = minimize(model.ivp, rm, opts);
        rep.payload["l"] = r.l;
        rep.payload["m"] = r.m;
        rep.payload["B_columns"] = jrows(r.B_cols);
        json classes = json::array();
        for (const auto& cls : variable_classes(r)) {
            json c = json::array();
            for (auto i : cls) c.push_back(names[i]);
            classes.push_back(c);
        }
        rep.payload["variable_classes"] = classes;
        std::cout << "minimal aggregation: l = " << r.l << " of " << n << " variables\n";
        if (r.l == n) std::cout << "already minimal (l = N)\n";
        std::cout << "variable classes:";
        for (const auto& cls : variable_classes(r)) {
            std::cout << " {";
            for (std::size_t i = 0; i < cls.size(); ++i)
                std::cout << (i ? "," : "") << names[cls[i]];
            std::cout << "}";
        }
        std::cout << "\n" << reduced_model_text(r);
        if (!out_path.empty()) {
            write_file(out_path, reduced_model_text(r));
            json side;
            side["mode"] = mode == "float" ? "float" : "rational";
            side["B_columns"] = jrows(r.B_cols);
            if (rm == ReductionMode::Orthonormal) side["B_columns_float"] = r.Bf_cols;
            write_file(out_path + ".json", side.dump(2) + "\n");
        }
    } else if (*lin) {
        std::vector<Poly> S;
        for (const auto& s : obs_exprs) S.push_back(parse_polynomial(s, names));
        KrylovMode km = mode == "float" ? KrylovMode::Float : KrylovMode::RationalExact;
        LinearReducedSystem r = linearize(S, model.ivp, order, km);
        if (r.empty_phi) {
            rep.warnings.push_back("all basis monomials vanish at the initial point");
            std::cout << "warning: empty projection (phi = 0); nothing to linearize\n";
            rep.flush();
            return kOk;
        }
        rep.payload["M"] = r.basis.size();
        rep.payload["l"] = r.l;
        rep.payload["happy_breakdown"] = r.happy;
        rep.payload["exact"] = r.exact;
        std::cout << "monomial basis size M = " << r.basis.size() << ", l = " << r.l << "\n";
        std::cout << (r.exact ? "exact linearization (Krylov space invariant)\n"
                              : "order-" + std::to_string(order) + " approximation\n");
        json recon = json::array();
        std::vector<std::string> ynames;
        for (std::size_t k = 0; k < r.l; ++k) ynames.push_back("y" + std::to_string(k + 1));
        std::ostringstream mos;
        mos.precision(17);
        mos << "vars: ";
        for (std::size_t k = 0; k < r.l; ++k) mos << (k ? ", " : "") << ynames[k];
        mos << "\n";
        if (km == KrylovMode::RationalExact) {
            rep.payload["A"] = jrows(r.A);
            rep.payload["y0"] = jvec(r.y0);
            for (std::size_t i = 0; i < r.l; ++i) {
                mos << ynames[i] << "' =";
                bool any = false;
                for (std::size_t j = 0; j < r.l; ++j)
                    if (r.A[i][j] != 0) {
                        mos << (any ? " + " : " ") << jrat(r.A[i][j]) << "*" << ynames[j];
                        any = true;
                    }
                if (!any) mos << " 0";
                mos << "\n";
            }
            mos << "init: ";
            for (std::size_t k = 0; k < r.l; ++k)
                mos << (k ? ", " : "") << ynames[k] << "=" << jrat(r.y0[k]);
            mos << "\n";
            for (std::size_t s = 0; s < S.size(); ++s) {
                RatVec row = reconstruct_exact(S[s], r);
                RatVec approx = linear_taylor(row, r.A, r.y0, order);
                TaylorPrefix truth = taylor_coefficients(S[s], model.ivp, order);
                bool agree = approx == truth.coefficients;
                json jr;
                jr["observable"] = S[s].render(names);
                jr["row"] = jvec(row);
                jr["taylor_agrees_to_order_m"] = agree;
                recon.push_back(jr);
                std::cout << "observable " << S[s].render(names) << ": Taylor prefix "
                          << (agree ? "matches" : "MISMATCH") << " to order " << order << "\n";
            }
        } else {
            rep.payload["A"] = r.Af;
            rep.payload["y0"] = r.y0f;
            for (std::size_t i = 0; i < r.l; ++i) {
                mos << ynames[i] << "' =";
                bool any = false;
                for (std::size_t j = 0; j < r.l; ++j)
                    if (r.Af[i][j] != 0) {
                        mos << (any ? " + " : " ") << r.Af[i][j] << "*" << ynames[j];
                        any = true;
                    }
                if (!any) mos << " 0";
                mos << "\n";
            }
            mos << "init: ";
            for (std::size_t k = 0; k < r.l; ++k)
                mos << (k ? ", " : "") << ynames[k] << "=" << r.y0f[k];
            mos << "\n";
            for (std::size_t s = 0; s < S.size(); ++s) {
                std::vector<double> row = reconstruct_numeric(S[s], r);
                std::vector<double> approx = linear_taylor(row, r.Af, r.y0f, order);
                TaylorPrefix truth = taylor_coefficients(S[s], model.ivp, order);
                double err = 0;
                for (std::size_t j = 0; j < order; ++j)
                    err = std::max(err,
                                   std::abs(approx[j] - rat_to_double(truth.coefficients[j])));
                json jr;
                jr["observable"] = S[s].render(names);
                jr["row"] = row;
                jr["taylor_max_abs_error"] = err;
                recon.push_back(jr);
                std::cout << "observable " << S[s].render(names)
                          << ": Taylor prefix max error " << err << "\n";
            }
        }
        rep.payload["reconstruction"] = recon;
        std::cout << mos.str();
        if (!out_path.empty()) write_file(out_path, mos.str());
    } else if (*tay) {
        Poly p = parse_polynomial(p_expr, names);
        TaylorPrefix t = taylor_coefficients(p, model.ivp, order);
        rep.payload["coefficients"] = jvec(t.coefficients);
        std::cout << "taylor(" << p.render(names) << "):";
        for (const auto& c : t.coefficients) std::cout << " " << jrat(c);
        std::cout << "\n";
    } else if (*integ) {
        Trajectory tr = integrate_numeric(model.ivp, t_end);
        if (tr.blew_up) rep.warnings.push_back("trajectory norm blow-up; stopped early");
        std::ostringstream csv;
        csv << "t";
        for (const auto& v : names) csv << "," << v;
        csv << "\n";
        csv.precision(15);
        for (std::size_t i = 0; i < tr.times.size(); ++i) {
            csv << tr.times[i];
            for (double x : tr.states[i]) csv << "," << x;
            csv << "\n";
        }
        rep.payload["reached"] = tr.reached;
        rep.payload["blew_up"] = tr.blew_up;
        if (!out_path.empty())
            write_file(out_path, csv.str());
        else
            std::cout << csv.str();
    } else if (*exau) {
        WeightedAutomaton wa = export_weighted_automaton(model.ivp, depth);
        json states = json::array();
        for (std::size_t i = 0; i < wa.states.size(); ++i) {
            json s;
            s["monomial"] = wa.states[i].render(names);
            s["weight"] = jrat(wa.weights[i]);
            s["frontier"] = static_cast<bool>(wa.frontier[i]);
            states.push_back(s);
        }
        json trans = json::array();
        for (const auto& t : wa.transitions) {
            json e;
            e["from"] = wa.states[t.from].render(names);
            e["label"] = jrat(t.label);
            e["to"] = wa.states[t.to].render(names);
            trans.push_back(e);
        }
        rep.payload["states"] = states;
        rep.payload["transitions"] = trans;
        std::string dot = automaton_dot(wa);
        if (!out_path.empty())
            write_file(out_path, dot);
        else
            std::cout << dot;
    }

    rep.flush();
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const GroebnerCapExceeded& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return kCap;
    } catch (const IterationCapExceeded& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return kCap;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputErr;
    }
}
