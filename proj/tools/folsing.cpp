// Command-line front end: discrepancy computation, classification, chain
// diagnostics, Seidenberg reduction, and the exhaustive sweep harnesses.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "folsing/adjoint.hpp"
#include "folsing/blowup.hpp"
#include "folsing/chains.hpp"
#include "folsing/enumerate.hpp"
#include "folsing/graph_io.hpp"
#include "folsing/patterns.hpp"
#include "folsing/vector_field.hpp"

namespace {

using namespace folsing;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Rational parse_rational_arg(const std::string& text) {
    try {
        return Rational::parse(text);
    } catch (const std::invalid_argument&) {
        throw UsageError("expected an exact rational 'p/q', got '" + text + "'");
    }
}

Convention parse_convention(const std::string& name) {
    if (name == "adjoint") return Convention::ADJOINT;
    if (name == "foliated") return Convention::FOLIATED;
    if (name == "surface") return Convention::SURFACE;
    throw UsageError("unknown convention '" + name + "'");
}

Theorem parse_theorem(const std::string& name) {
    if (name == "main-lc") return Theorem::MAIN_LC;
    if (name == "main-can") return Theorem::MAIN_CAN;
    if (name == "surf-lc") return Theorem::SURF_LC;
    if (name == "fol-lc") return Theorem::FOL_LC;
    throw UsageError("unknown theorem '" + name + "'");
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw UsageError("cannot write " + out_path);
    out << text;
}

// "E1=-1,E2=0:1" means D.E1 = -1, D.E2 = 0 + 1*eps.
Divisor parse_d_dot(const std::string& text) {
    Divisor out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string item = text.substr(pos, comma - pos);
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("bad --d-dot entry '" + item + "'");
        const std::string id = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        const std::size_t colon = val.find(':');
        if (colon == std::string::npos) {
            out[id] = EpsAffine(parse_rational_arg(val));
        } else {
            out[id] = EpsAffine(parse_rational_arg(val.substr(0, colon)),
                                parse_rational_arg(val.substr(colon + 1)));
        }
        pos = comma + 1;
    }
    return out;
}

OrderedJson family_to_json(const std::optional<FamilyTag>& tag) {
    OrderedJson j;
    if (!tag) {
        j["family"] = nullptr;
        j["reason"] = "no family of the requested theorem matches this configuration";
        return j;
    }
    j["family"] = tag->family;
    j["parameters"] = OrderedJson::array();
    for (const auto& p : tag->parameters) j["parameters"].push_back(p.str());
    j["annotations"] = tag->annotations;
    return j;
}

OrderedJson sweep_to_json(const SweepReport& rep) {
    OrderedJson j;
    j["total_generated"] = rep.stats.total_generated;
    j["nd_count"] = rep.stats.nd_count;
    j["filter_pass"] = rep.stats.filter_pass;
    j["lc_count"] = rep.lc_count;
    j["lc_set_truncated"] = rep.lc_set_truncated;
    j["matched"] = OrderedJson::object();
    for (const auto& [fam, count] : rep.matched) j["matched"][fam] = count;
    j["unmatched_count"] = rep.unmatched_count;
    j["unmatched_lc"] = rep.unmatched_lc;
    j["failing_count"] = rep.failing_count;
    j["family_instances_failing_lc"] = rep.family_instances_failing_lc;
    return j;
}

struct EpsQuery {
    std::optional<Rational> point;
    std::optional<std::pair<Rational, Rational>> interval;
};

EpsQuery make_eps_query(const std::string& eps, const std::vector<std::string>& interval) {
    EpsQuery q;
    if (!eps.empty() && !interval.empty())
        throw UsageError("--epsilon and --epsilon-interval are mutually exclusive");
    if (!eps.empty()) q.point = parse_rational_arg(eps);
    if (!interval.empty()) {
        if (interval.size() != 2) throw UsageError("--epsilon-interval needs two rationals");
        const Rational lo = parse_rational_arg(interval[0]);
        const Rational hi = parse_rational_arg(interval[1]);
        if (!(lo < hi)) throw UsageError("--epsilon-interval needs lo < hi");
        q.interval = {lo, hi};
    }
    return q;
}

GradeVerdict graded(const AdjointContext& ctx, const EpsQuery& q) {
    if (ctx.convention != Convention::ADJOINT) return grade(ctx);
    if (q.point) return point_grade(ctx, *q.point);
    if (q.interval) return grade(ctx, q.interval->first, q.interval->second);
    throw UsageError("the adjoint convention needs --epsilon or --epsilon-interval");
}

int cmd_discrepancy(const std::string& graph_path, const std::string& convention,
                    const EpsQuery& q, const std::string& out_path) {
    const DecoratedGraph g = load_graph(graph_path);
    const AdjointContext ctx{g, parse_convention(convention)};
    const DiscrepancyResult d = discrepancies(ctx);
    OrderedJson j;
    j["convention"] = convention;
    if (q.point) j["epsilon"] = q.point->str();
    if (q.interval)
        j["epsilon_interval"] = OrderedJson::array({q.interval->first.str(), q.interval->second.str()});
    j["log"] = divisor_to_json(g, d.log_coeffs);
    j["raw"] = divisor_to_json(g, d.raw_coeffs);
    if (q.point) {
        OrderedJson at = OrderedJson::object();
        for (const auto& c : g.curves()) at[c.id] = d.raw_coeffs.at(c.id).eval(*q.point).str();
        j["raw_at_epsilon"] = at;
    }
    j["grades"] = grades_to_json(graded(ctx, q));
    write_output(j.dump(2) + "\n", out_path);
    return 0;
}

int cmd_classify(const std::string& graph_path, const std::string& theorem_name,
                 const EpsQuery& q, const std::string& out_path) {
    const DecoratedGraph g = load_graph(graph_path);
    const Theorem theorem = parse_theorem(theorem_name);
    Rational lo(0), hi(1, 5);
    if (q.interval) {
        lo = q.interval->first;
        hi = q.interval->second;
    } else if (theorem == Theorem::MAIN_CAN) {
        hi = Rational(1, 4);
    }
    const auto tag = classify(g, theorem, lo, hi);
    OrderedJson j = family_to_json(tag);
    Convention conv = Convention::ADJOINT;
    if (theorem == Theorem::SURF_LC) conv = Convention::SURFACE;
    if (theorem == Theorem::FOL_LC) conv = Convention::FOLIATED;
    const AdjointContext ctx{g, conv};
    j["grades"] = grades_to_json(conv == Convention::ADJOINT ? grade(ctx, lo, hi) : grade(ctx));
    write_output(j.dump(2) + "\n", out_path);
    return 0;
}

int cmd_chain_info(const std::string& graph_path, const std::string& chain_arg,
                   const std::string& d_dot_arg, const std::string& out_path) {
    const DecoratedGraph g = load_graph(graph_path);
    std::vector<std::string> chain;
    std::size_t pos = 0;
    while (pos <= chain_arg.size()) {
        std::size_t comma = chain_arg.find(',', pos);
        if (comma == std::string::npos) comma = chain_arg.size();
        if (comma > pos) chain.push_back(chain_arg.substr(pos, comma - pos));
        pos = comma + 1;
    }
    if (chain.empty()) throw UsageError("--chain needs a comma-separated list of curve ids");
    const ChainData cd = lambda_mu(g, chain);
    OrderedJson j;
    j["chain"] = chain;
    OrderedJson lam = OrderedJson::array(), mu = OrderedJson::array();
    for (const auto& v : cd.lambda) lam.push_back(v.str());
    for (const auto& v : cd.mu) mu.push_back(v.str());
    j["lambda"] = lam;
    j["mu"] = mu;
    j["n"] = cd.n.str();
    if (!d_dot_arg.empty()) {
        const Divisor d_dot = parse_d_dot(d_dot_arg);
        const Divisor m = m_divisor(g, chain, d_dot);
        OrderedJson gamma = OrderedJson::object();
        for (const auto& id : chain) gamma[id] = eps_affine_to_json(m.at(id));
        j["gamma"] = gamma;
    }
    write_output(j.dump(2) + "\n", out_path);
    return 0;
}

int cmd_resolve(const std::string& form, int max_depth, const std::string& emit,
                const EpsQuery& q, const std::string& out_path) {
    const PolyVectorField vf = parse_vf(form);
    const ResolutionTree tree = reduce(vf, max_depth);
    const DecoratedGraph g = extract_graph(tree);

    OrderedJson j;
    j["form"] = form;
    j["field"] = OrderedJson::array({vf.a.str(), vf.b.str()});
    j["regular_germ"] = tree.regular_germ;
    j["blowups"] = tree.steps.size();
    OrderedJson steps = OrderedJson::array();
    for (const auto& s : tree.steps) {
        OrderedJson js;
        js["curve"] = tree.curves[static_cast<std::size_t>(s.new_curve)].id;
        js["divided_power"] = s.divided_power;
        js["multiplicity"] = s.multiplicity;
        js["l"] = s.l_invariant;
        OrderedJson on = OrderedJson::array();
        for (int c : s.center_on) on.push_back(tree.curves[static_cast<std::size_t>(c)].id);
        js["center_on"] = on;
        steps.push_back(js);
    }
    j["steps"] = steps;

    OrderedJson curves = OrderedJson::array();
    for (const auto& c : tree.curves) {
        OrderedJson jc;
        jc["id"] = c.id;
        jc["kf"] = c.kf;
        jc["kx"] = c.kx;
        jc["self"] = c.self_int;
        jc["invariant"] = c.invariant;
        if (c.invariant) jc["z"] = c.z_direct;
        else jc["tang"] = c.tang_direct;
        curves.push_back(jc);
    }
    j["curves"] = curves;

    const Divisor ledger = ledger_discrepancies(tree);
    OrderedJson jl = OrderedJson::object();
    for (const auto& c : tree.curves) jl[c.id] = eps_affine_to_json(ledger.at(c.id));
    j["ledger"] = jl;

    OrderedJson sing = OrderedJson::array();
    for (const auto& p : tree.final_points) {
        if (!p.is_singular) continue;
        OrderedJson jp;
        jp["where"] = p.where;
        jp["status"] = to_string(p.info.status);
        jp["trace"] = p.info.trace.str();
        jp["det"] = p.info.det.str();
        sing.push_back(jp);
    }
    j["singularities"] = sing;

    if (q.point) {
        OrderedJson at = OrderedJson::object();
        for (const auto& c : tree.curves)
            at[c.id] = ledger.at(c.id).eval(*q.point).str();
        j["raw_at_epsilon"] = at;
    }
    if (!g.empty() || tree.regular_germ) {
        const AdjointContext ctx{g, Convention::ADJOINT};
        if (q.point) j["grades"] = grades_to_json(point_grade(ctx, *q.point));
        else if (q.interval)
            j["grades"] = grades_to_json(grade(ctx, q.interval->first, q.interval->second));
        j["foliated_grades"] = grades_to_json(grade({g, Convention::FOLIATED}));
    }

    const bool want_graph = emit.find("graph") != std::string::npos;
    const bool want_dot = emit.find("dot") != std::string::npos;
    if (out_path.empty()) {
        if (want_graph) j["graph"] = graph_to_json(g);
        if (want_dot) j["dot"] = graph_to_dot(g);
        std::cout << j.dump(2) << "\n";
    } else {
        if (want_graph) save_graph(g, out_path + ".graph.json");
        if (want_dot) {
            std::ofstream dot(out_path + ".dot");
            dot << graph_to_dot(g);
        }
        std::ofstream out(out_path + ".json");
        out << j.dump(2) << "\n";
    }
    return 0;
}

int cmd_enumerate(const Bounds& b, const std::string& out_path) {
    Enumerator en(b);
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw UsageError("cannot write " + out_path);
        out = &file;
    }
    en.generate([&](const std::string& key, const Enumerator::Emitted& g) {
        OrderedJson j = graph_to_json(g.materialize());
        j["key"] = key;
        *out << j.dump() << "\n";
    });
    std::cerr << "generated " << en.stats().filter_pass << " graphs ("
              << en.stats().nd_count << "/" << en.stats().total_generated
              << " self-intersection patterns negative definite)\n";
    return 0;
}

int cmd_verify(const Bounds& b, const std::string& theorem_name, const EpsQuery& q, int jobs,
               const std::string& out_path) {
    const Theorem theorem = parse_theorem(theorem_name);
    Rational lo(0), hi = theorem == Theorem::MAIN_CAN ? Rational(1, 4) : Rational(1, 5);
    if (q.interval) {
        lo = q.interval->first;
        hi = q.interval->second;
    }
    const SweepReport rep = verify_theorem(b, theorem, lo, hi, jobs);
    OrderedJson j = sweep_to_json(rep);
    j["theorem"] = theorem_name;
    j["epsilon_interval"] = OrderedJson::array({lo.str(), hi.str()});
    write_output(j.dump(2) + "\n", out_path);
    // The canonical ladder keeps eps-dependent thresholds inside its
    // families, so only completeness is an expected-empty list there.
    const bool ok = rep.complete() && (theorem == Theorem::MAIN_CAN || rep.sound());
    return ok ? 0 : 1;
}

int cmd_cross_check(const Bounds& b, int jobs, const std::string& out_path) {
    const CrossCheckReport rep = cross_check_prop15(b, jobs);
    OrderedJson j;
    j["total_generated"] = rep.stats.total_generated;
    j["filter_pass"] = rep.stats.filter_pass;
    j["lc_checked"] = rep.lc_checked;
    j["canonical_checked"] = rep.canonical_checked;
    j["lc_counterexamples"] = rep.lc_counterexamples;
    j["klt_counterexamples"] = rep.klt_counterexamples;
    j["canonical_counterexamples"] = rep.canonical_counterexamples;
    write_output(j.dump(2) + "\n", out_path);
    return rep.clean() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact discrepancy computation and classification for adjoint divisors on "
                 "foliated surface germs"};
    app.require_subcommand(1);

    std::string graph_path, form, convention = "adjoint", theorem, out_path, emit = "";
    std::string eps, chain_arg, d_dot_arg;
    std::vector<std::string> interval;
    int max_depth = 32;
    int jobs = 1;
    Bounds bounds;

    auto add_eps_opts = [&](CLI::App* cmd) {
        cmd->add_option("--epsilon", eps, "exact rational parameter p/q");
        cmd->add_option("--epsilon-interval", interval, "open interval: two rationals lo hi")
            ->expected(2);
    };
    auto add_bounds_opts = [&](CLI::App* cmd) {
        cmd->add_option("--max-curves", bounds.max_curves, "maximum number of curves");
        cmd->add_option("--min-self", bounds.min_self, "most negative self-intersection");
        cmd->add_option("--max-z", bounds.max_z, "largest Z index");
        cmd->add_option("--max-tang", bounds.max_tang, "largest tangency order");
        cmd->add_flag("--no-nodal", [&](std::size_t) { bounds.allow_nodal = false; },
                      "skip nodal decorations");
        cmd->add_flag("--no-genus1", [&](std::size_t) { bounds.allow_genus1 = false; },
                      "skip genus-1 decorations");
        cmd->add_option("--jobs", jobs, "worker threads");
    };

    auto* discrepancy = app.add_subcommand("discrepancy", "solve the discrepancy system");
    discrepancy->add_option("--graph", graph_path, "graph JSON file")->required();
    discrepancy->add_option("--convention", convention, "adjoint | foliated | surface");
    add_eps_opts(discrepancy);
    discrepancy->add_option("--out", out_path, "write the report here");

    auto* classify_cmd = app.add_subcommand("classify", "match a graph against a family list");
    classify_cmd->add_option("--graph", graph_path, "graph JSON file")->required();
    classify_cmd->add_option("--theorem", theorem, "main-lc | main-can | surf-lc | fol-lc")
        ->required();
    add_eps_opts(classify_cmd);
    classify_cmd->add_option("--out", out_path, "write the report here");

    auto* chain_info = app.add_subcommand("chain-info", "lambda/mu data of a chain");
    chain_info->add_option("--graph", graph_path, "graph JSON file")->required();
    chain_info->add_option("--chain", chain_arg, "comma-separated curve ids")->required();
    chain_info->add_option("--d-dot", d_dot_arg, "degrees: id=const[:eps],...");
    chain_info->add_option("--out", out_path, "write the report here");

    auto* resolve = app.add_subcommand("resolve", "Seidenberg reduction of a polynomial germ");
    resolve->add_option("--form", form, "germ: \"omega: P dx + Q dy\" or \"v: A d/dx + B d/dy\"")
        ->required();
    resolve->add_option("--max-depth", max_depth, "blowup budget");
    resolve->add_option("--emit", emit, "comma list from: graph,ledger,dot");
    add_eps_opts(resolve);
    resolve->add_option("--out", out_path, "output file stem");

    auto* enumerate_cmd = app.add_subcommand("enumerate", "stream the bounded graph universe");
    add_bounds_opts(enumerate_cmd);
    enumerate_cmd->add_option("--out", out_path, "JSONL output path");

    auto* verify = app.add_subcommand("verify-theorem", "exhaustive classification sweep");
    verify->add_option("--theorem", theorem, "main-lc | main-can | surf-lc | fol-lc")->required();
    add_eps_opts(verify);
    add_bounds_opts(verify);
    verify->add_option("--out", out_path, "write the report here");

    auto* cross = app.add_subcommand("cross-check", "interpolation sweep across the ladders");
    add_bounds_opts(cross);
    cross->add_option("--out", out_path, "write the report here");

    CLI11_PARSE(app, argc, argv);

    try {
        const EpsQuery q = make_eps_query(eps, interval);
        if (discrepancy->parsed()) return cmd_discrepancy(graph_path, convention, q, out_path);
        if (classify_cmd->parsed()) return cmd_classify(graph_path, theorem, q, out_path);
        if (chain_info->parsed()) return cmd_chain_info(graph_path, chain_arg, d_dot_arg, out_path);
        if (resolve->parsed()) return cmd_resolve(form, max_depth, emit, q, out_path);
        if (enumerate_cmd->parsed()) return cmd_enumerate(bounds, out_path);
        if (verify->parsed()) return cmd_verify(bounds, theorem, q, jobs, out_path);
        if (cross->parsed()) return cmd_cross_check(bounds, jobs, out_path);
    } catch (const UsageError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const ParseError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const ReductionError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "internal error: " << err.what() << "\n";
        return 3;
    }
    return 2;
}
