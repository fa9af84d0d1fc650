// Command-line front end: construct / gallery / verify / bound / audit /
// search, with deterministic human-readable or structured output.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "eqlines/bounds.hpp"
#include "eqlines/code.hpp"
#include "eqlines/constructions.hpp"
#include "eqlines/prooflab.hpp"
#include "eqlines/seidel.hpp"

using namespace eqlines;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

struct Report {
    ordered_json fields = ordered_json::object();

    void add(const std::string& key, const std::string& value) { fields[key] = value; }
    void add(const std::string& key, long value) { fields[key] = value; }
    void add(const std::string& key, bool value) { fields[key] = value; }

    void print(bool structured) const {
        if (structured) {
            std::cout << fields.dump(2) << "\n";
            return;
        }
        for (auto it = fields.begin(); it != fields.end(); ++it) {
            std::cout << it.key() << ": ";
            if (it->is_string())
                std::cout << it->get<std::string>();
            else
                std::cout << it->dump();
            std::cout << "\n";
        }
    }
};

std::string pair_list(const std::vector<OffendingPair>& pairs, std::size_t cap = 20) {
    std::string s;
    for (std::size_t k = 0; k < pairs.size() && k < cap; ++k) {
        if (!s.empty()) s += " ";
        s += "(" + std::to_string(pairs[k].i) + "," + std::to_string(pairs[k].j) + ")=" +
             pairs[k].value;
    }
    if (pairs.size() > cap) s += " ...";
    return s;
}

int cmd_construct(const std::string& family, std::optional<long> n, std::optional<long> r,
                  std::optional<long> t, const std::string& tau, const std::string& out,
                  bool structured) {
    Code code;
    if (family == "simplex") {
        if (!n) throw CLI::ValidationError("--n is required for --family simplex");
        code = simplex(*n);
    } else if (family == "ls") {
        if (!r || !t) throw CLI::ValidationError("--r and --t are required for --family ls");
        code = ls_family({*r, *t, parse_rational(tau)});
    } else {
        throw CLI::ValidationError("unknown family: " + family);
    }
    save_code(code, out);
    Report rep;
    rep.add("family", family);
    rep.add("label", code.label);
    rep.add("size", long(code.size()));
    rep.add("out", out);
    rep.print(structured);
    return kExitOk;
}

int cmd_gallery(const std::string& name, const std::string& out, bool structured) {
    Code code = gallery(name);
    save_code(code, out);
    Report rep;
    rep.add("name", name);
    rep.add("size", long(code.size()));
    rep.add("out", out);
    rep.print(structured);
    return kExitOk;
}

int cmd_verify(const std::string& file, const std::string& lset, std::optional<double> tol,
               bool structured) {
    Code code = load_code(file);
    if (tol && code.form == Code::Form::vectors) code.tolerance = *tol;
    LSet L = parse_lset(lset);
    ValidationReport v = validate(code, L);
    Report rep;
    rep.add("file", file);
    rep.add("L", L.str());
    rep.add("ok", v.ok);
    rep.add("size", long(v.size));
    rep.add("dimension", long(v.dimension));
    if (!v.ok) {
        rep.add("offending_count", long(v.offending_pairs.size()));
        rep.add("offending_pairs", pair_list(v.offending_pairs));
    }
    rep.print(structured);
    return v.ok ? kExitOk : kExitFailed;
}

int cmd_bound(std::optional<long> gerzon_d, const std::vector<std::string>& relative,
              const std::vector<std::string>& caps, const std::string& bukh, bool structured) {
    Report rep;
    if (gerzon_d) {
        GerzonResult g = gerzon(*gerzon_d);
        rep.add("bound", "gerzon");
        rep.add("d", *gerzon_d);
        rep.add("value", g.bound.str());
        rep.add("equality_possible", g.equality_possible);
        rep.print(structured);
        return kExitOk;
    }
    if (!relative.empty()) {
        long d = std::stol(relative.at(0));
        Rational alpha = parse_rational(relative.at(1));
        auto v = relative_bound(d, alpha);
        rep.add("bound", "relative");
        rep.add("d", d);
        rep.add("alpha", to_string(alpha));
        rep.add("value", v ? to_string(*v) : std::string("absent (d >= 1/alpha^2)"));
        rep.print(structured);
        return kExitOk;
    }
    if (!caps.empty()) {
        Rational alpha = parse_rational(caps.at(0));
        long d = std::stol(caps.at(1));
        ClassicalCaps c = classical_caps(alpha, d);
        rep.add("bound", "caps");
        rep.add("alpha", to_string(alpha));
        rep.add("d", d);
        rep.add("two_d_applies", c.two_d_applies);
        rep.add("known_exact", c.known_exact ? c.known_exact->str() : std::string("absent"));
        if (c.threshold_assumed) rep.add("threshold_assumed", true);
        rep.print(structured);
        return kExitOk;
    }
    if (!bukh.empty()) {
        BukhBreakdown b = bukh_constant(parse_rational(bukh));
        if (structured) {
            rep.add("bound", "bukh");
            rep.add("beta", to_string(b.beta));
            rep.add("t", to_string(b.t));
            rep.add("eps", to_string(b.eps));
            rep.add("n0", to_string(b.n0));
            rep.add("B", b.B.str());
            rep.add("delta", to_string(b.delta));
            rep.add("n", b.n.str());
            rep.add("R_bound", b.R_bound.str());
            rep.add("pow_term", b.pow_term.str());
            rep.add("M", b.M.str());
            rep.add("c", b.c.str());
            rep.print(true);
        } else {
            std::cout << breakdown_report(b);
        }
        return kExitOk;
    }
    throw CLI::ValidationError("one of --gerzon/--relative/--caps/--bukh is required");
}

int cmd_audit(const std::string& file, const std::string& lset, std::optional<long> ov_n,
              const std::string& ov_delta, const std::string& ov_t, const std::string& ov_eps,
              bool peel, bool structured) {
    Code code = load_code(file);
    LSet L = parse_lset(lset);
    AuditOverrides ov;
    if (ov_n) ov.n = *ov_n;
    if (!ov_delta.empty()) ov.delta = parse_rational(ov_delta);
    if (!ov_t.empty()) ov.t = parse_rational(ov_t);
    if (!ov_eps.empty()) ov.eps = parse_rational(ov_eps);

    Report rep;
    rep.add("file", file);
    rep.add("L", L.str());
    if (peel) {
        PeelingReport p = peeling_audit(code, L, ov);
        rep.add("mode", "peeling");
        rep.add("B", p.B.str());
        rep.add("rounds", long(p.rounds.size()));
        std::string rounds;
        for (const auto& r : p.rounds) {
            if (!rounds.empty()) rounds += " ";
            rounds += "|U|=" + std::to_string(r.U_size) + ",|I|=" + std::to_string(r.I_size) +
                      ",survivors=" + std::to_string(r.survivor_count);
        }
        rep.add("round_detail", rounds);
        rep.add("clique_probability_bound", to_string(p.clique_probability_bound));
        bool clique_violation = false;
        if (p.clique_found) {
            std::string cl;
            for (std::size_t v : *p.clique_found) cl += (cl.empty() ? "" : " ") + std::to_string(v);
            rep.add("clique_found", cl);
            AuditDefaults defs = audit_defaults(L);
            clique_violation =
                Rational(long(p.clique_found->size())) > 1 / defs.beta + 1;
        } else {
            rep.add("clique_found", std::string("none"));
        }
        rep.add("ok", !clique_violation);
        rep.print(structured);
        return clique_violation ? kExitFailed : kExitOk;
    }

    ValidationReport v = validate(code, L);
    if (!v.ok) {
        rep.add("ok", false);
        rep.add("error", "code does not validate against L");
        rep.print(structured);
        return kExitFailed;
    }
    Graph g = attachment_graph(code, L);
    SetResult I = max_independent_set(g);
    AuditReport a = bad_vertex_audit(code, L, I.vertices, ov);
    rep.add("mode", "bad-vertex");
    rep.add("independent_set_size", long(I.vertices.size()));
    rep.add("independent_set_exact", I.exact);
    rep.add("applicable", a.applicable);
    rep.add("window_size", a.n);
    rep.add("t", to_string(a.t));
    rep.add("eps", to_string(a.eps));
    rep.add("delta", to_string(a.delta));
    if (a.applicable) {
        rep.add("bad_total", long(a.bad_total));
        rep.add("good_count", long(a.good_vertices.size()));
        rep.add("lemma5_violations", long(a.lemma5_violations.size()));
        rep.add("lemma6_conclusion_holds", a.lemma6_conclusion_holds);
    }
    rep.print(structured);
    bool failed = a.applicable && (!a.lemma5_violations.empty() || !a.lemma6_conclusion_holds);
    return failed ? kExitFailed : kExitOk;
}

int cmd_search(long dim, long max_order, bool dedup, unsigned threads, bool structured) {
    SearchResult r = max_lines(dim, std::size_t(max_order), threads);
    Report rep;
    rep.add("dim", dim);
    rep.add("max_order", max_order);
    rep.add("m_max", long(r.m_max));
    rep.add("exhaustive", r.exhaustive);
    if (r.witness_cert) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.9g", r.witness_cert->lambda_min);
        rep.add("lambda_min", std::string(buf));
        rep.add("multiplicity", long(r.witness_cert->multiplicity));
        rep.add("alpha", r.witness_cert->alpha_exact
                             ? to_string(*r.witness_cert->alpha_exact)
                             : [&] {
                                   std::snprintf(buf, sizeof buf, "%.9g", r.witness_cert->alpha);
                                   return std::string(buf);
                               }());
        rep.add("d_min", long(r.witness_cert->d_min));
        rep.add("exactness", r.witness_cert->exactness);
        rep.add("witness_encoding", long(r.witness->encoding()));
    }
    if (dedup) {
        rep.add("dedup_classes", long(enumerate_dedup(std::size_t(std::min<long>(max_order, 8))).size()));
    }
    rep.print(structured);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact toolkit for L-spherical codes and equiangular line systems"};
    app.require_subcommand(1);
    app.fallthrough();
    bool structured = false;
    app.add_flag("--format-structured,--structured", structured,
                 "emit the structured (JSON) report instead of the human one");
    // Accept `--format structured` as documented too.
    std::string format;
    app.add_option("--format", format, "report format: human | structured");

    auto* c_construct = app.add_subcommand("construct", "build a code and write it to a file");
    std::string family, tau = "1/2", out;
    std::optional<long> n, r, t;
    c_construct->add_option("--family", family)->required();
    c_construct->add_option("--n", n);
    c_construct->add_option("--r", r);
    c_construct->add_option("--t", t);
    c_construct->add_option("--tau", tau);
    c_construct->add_option("--out", out)->required();

    auto* c_gallery = app.add_subcommand("gallery", "write a gallery witness to a file");
    std::string gname, gout;
    c_gallery->add_option("--name", gname)->required();
    c_gallery->add_option("--out", gout)->required();

    auto* c_verify = app.add_subcommand("verify", "validate a code file against an L-set");
    std::string vfile, vlset;
    std::optional<double> vtol;
    c_verify->add_option("file", vfile)->required();
    c_verify->add_option("--L", vlset)->required();
    c_verify->add_option("--tol", vtol);

    auto* c_bound = app.add_subcommand("bound", "evaluate the upper-bound calculators");
    std::optional<long> gerzon_d;
    std::vector<std::string> rel, caps;
    std::string bukh;
    c_bound->add_option("--gerzon", gerzon_d);
    c_bound->add_option("--relative", rel)->expected(2);
    c_bound->add_option("--caps", caps)->expected(2);
    c_bound->add_option("--bukh", bukh);

    auto* c_audit = app.add_subcommand("audit", "run the bad-vertex / peeling audits");
    std::string afile, alset, ov_delta, ov_t, ov_eps;
    std::optional<long> ov_n;
    bool peel = false;
    c_audit->add_option("file", afile)->required();
    c_audit->add_option("--L", alset)->required();
    c_audit->add_option("--override-n", ov_n);
    c_audit->add_option("--override-delta", ov_delta);
    c_audit->add_option("--override-t", ov_t);
    c_audit->add_option("--override-eps", ov_eps);
    c_audit->add_flag("--peel", peel);

    auto* c_search = app.add_subcommand("search", "exhaustive Seidel-matrix search");
    long sdim = 0, smax = 7;
    bool dedup = false;
    unsigned threads = 1;
    c_search->add_option("--dim", sdim)->required();
    c_search->add_option("--max-order", smax)->required();
    c_search->add_flag("--dedup", dedup);
    c_search->add_option("--threads", threads);

    try {
        app.parse(argc, argv);
        if (format == "structured") structured = true;

        if (*c_construct) return cmd_construct(family, n, r, t, tau, out, structured);
        if (*c_gallery) return cmd_gallery(gname, gout, structured);
        if (*c_verify) return cmd_verify(vfile, vlset, vtol, structured);
        if (*c_bound) return cmd_bound(gerzon_d, rel, caps, bukh, structured);
        if (*c_audit)
            return cmd_audit(afile, alset, ov_n, ov_delta, ov_t, ov_eps, peel, structured);
        if (*c_search) return cmd_search(sdim, smax, dedup, threads, structured);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;  // --help
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const RangeError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UnknownName& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
}
