// Command-line frontend: subcommands table, alex, mahler, cover, growth.
// Human-readable text by default; --format json emits records that validate
// against schemas/cli-output.schema.json.  Exact integers are decimal
// strings.  With a fixed --seed all numeric output is bit-reproducible and
// independent of --threads.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "linkhom/linkhom.hpp"

using json = nlohmann::ordered_json;
using namespace linkhom;

namespace {

constexpr const char* kConventionNote =
    "delta = det(based matrix) for knots; det(based matrix with one row and "
    "one generator column removed) / (u_c - 1) for links, c the component of "
    "the removed generator; canonical up to +-u^a";

struct GlobalOpts {
    double tol = 5e-3;
    int threads = 1;
    std::uint64_t seed = 0x1b873593u;
    std::string format = "text";
};

LinkDiagram diagram_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open diagram file: " + path);
    json j = json::parse(in);
    LinkDiagram d;
    d.num_arcs = j.at("num_arcs").get<int>();
    d.num_components = j.at("num_components").get<int>();
    d.component_of_arc = j.at("component_of_arc").get<std::vector<int>>();
    for (const auto& c : j.at("crossings")) {
        Crossing cr;
        cr.over_arc = c.at("over_arc").get<int>();
        cr.under_in = c.at("incoming_under").get<int>();
        cr.under_out = c.at("outgoing_under").get<int>();
        cr.over_component = c.at("over_component").get<int>();
        cr.under_component = c.at("under_component").get<int>();
        cr.sign = c.at("sign").get<int>();
        d.crossings.push_back(cr);
    }
    if (j.contains("name")) d.name = j.at("name").get<std::string>();
    auto rep = validate_diagram(d);
    if (!rep.ok()) throw ValidationError("diagram file: " + rep.violations.front());
    return d;
}

WirtingerPresentation presentation_from_flags(const std::string& link,
                                              const std::string& pd,
                                              const std::string& diagram_json) {
    int given = (!link.empty()) + (!pd.empty()) + (!diagram_json.empty());
    if (given != 1)
        throw Error("give exactly one of --link, --pd, --diagram-json");
    if (!link.empty()) return wirtinger(builtin_link(link));
    if (!pd.empty()) return wirtinger(pd_to_diagram(parse_pd(pd)));
    return wirtinger(diagram_from_json_file(diagram_json));
}

json mahler_to_json(const MahlerResult& m) {
    json j;
    j["command"] = "mahler";
    j["value"] = m.value;
    j["log_value"] = m.log_value;
    j["method"] = m.method;
    j["error_bound"] = m.error_bound;
    j["tolerance_reached"] = m.tolerance_reached;
    if (!m.grid_sizes.empty()) j["grid_sizes"] = m.grid_sizes;
    return j;
}

json summary_to_json(const HomologySummary& h) {
    json j;
    j["betti"] = h.betti;
    json factors = json::array();
    for (const auto& f : h.invariant_factors) factors.push_back(f.str());
    j["invariant_factors"] = factors;
    j["torsion_order"] = h.torsion_order.str();
    j["sfix_dim"] = h.sfix_dim;
    j["method"] = h.method;
    return j;
}

json record_to_json(const GrowthRecord& r) {
    json j;
    j["lattice"] = r.lattice_spec;
    j["m"] = r.m;
    j["min_vec"] = r.min_vec;
    j["betti"] = r.betti;
    j["torsion_order"] = r.torsion_order.str();
    j["normalized_log"] = r.normalized_log;
    if (r.failed) j["error"] = r.error;
    return j;
}

int run_table(const GlobalOpts& g) {
    if (g.format == "json") {
        json out;
        out["command"] = "table";
        json links = json::array();
        for (const auto& info : builtin_table()) {
            json e;
            e["name"] = info.name;
            e["aliases"] = info.aliases;
            e["components"] = info.components;
            e["crossings"] = info.crossings;
            e["delta"] = info.delta;
            e["poly_only"] = info.poly_only;
            links.push_back(e);
        }
        out["links"] = links;
        std::cout << out.dump(2) << "\n";
    } else {
        std::printf("%-26s %5s %10s  %s\n", "name", "comps", "crossings", "delta");
        for (const auto& info : builtin_table()) {
            std::ostringstream line;
            line << info.name;
            for (const auto& a : info.aliases) line << " (" << a << ")";
            std::string comps = info.poly_only ? "-" : std::to_string(info.components);
            std::printf("%-26s %5s %10d  %s\n", line.str().c_str(), comps.c_str(),
                        info.crossings, info.delta.c_str());
        }
    }
    return 0;
}

int run_alex(const GlobalOpts& g, const std::string& link, const std::string& pd,
             const std::string& diagram_json) {
    auto pres = presentation_from_flags(link, pd, diagram_json);
    auto res = alexander_polynomial_full(pres);
    if (g.format == "json") {
        json out;
        out["command"] = "alex";
        out["delta"] = res.delta.to_string();
        out["det_r"] = res.det_r.to_string();
        out["convention_note"] = kConventionNote;
        out["components"] = pres.d;
        out["generators"] = pres.N;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << res.delta.to_string() << "\n";
    }
    return 0;
}

int run_mahler(const GlobalOpts& g, const std::string& link, const std::string& poly) {
    if (link.empty() == poly.empty())
        throw Error("give exactly one of --link, --poly");
    LaurentPoly f(1);
    if (!poly.empty()) {
        f = parse_poly(poly);
    } else {
        // built-ins with a diagram: measure of the computed polynomial
        const std::string key = detail::canonical_builtin_name(link);
        if (key == "lehmer-poly")
            f = builtin_polynomial(link);
        else
            f = alexander_polynomial(wirtinger(builtin_link(link)));
    }
    if (f.is_zero()) throw Error("zero polynomial has no Mahler measure");
    MahlerOptions opts{g.tol, g.seed};
    MahlerResult m = mahler(f, opts);
    if (g.format == "json") {
        json out = mahler_to_json(m);
        out["poly"] = f.to_string();
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "M = " << m.value << "  (log " << m.log_value << ", method "
                  << m.method << ", error bound " << m.error_bound << ")\n";
    }
    return 0;
}

int run_cover(const GlobalOpts& g, const std::string& link, const std::string& pd,
              const std::string& diagram_json, const std::string& lattice_spec,
              const std::string& method) {
    auto pres = presentation_from_flags(link, pd, diagram_json);
    Lattice lam = parse_lattice(lattice_spec, pres.d);
    auto q = build_complex(pres, lam);
    std::optional<HomologySummary> hd, hr;
    if (method == "direct" || method == "both") hd = homology_direct(q, lam);
    if (method == "relative" || method == "both") hr = homology_relative(q, lam);
    if (method != "direct" && method != "relative" && method != "both")
        throw Error("--method must be direct, relative or both");
    const HomologySummary& h = hd ? *hd : *hr;
    bool agree = !(hd && hr) || hd->same_group(*hr);
    long long sigma_rank = sigma_prime_rank(pres, lam);
    if (g.format == "json") {
        json out;
        out["command"] = "cover";
        out["betti"] = h.betti;
        json factors = json::array();
        for (const auto& f : h.invariant_factors) factors.push_back(f.str());
        out["invariant_factors"] = factors;
        out["torsion_order"] = h.torsion_order.str();
        out["sfix_dim"] = h.sfix_dim;
        out["sigma_prime_rank"] = sigma_rank;
        out["lattice"] = lam.spec;
        out["index"] = h.index;
        out["shortest_vector"] = h.min_vec;
        if (hd && hr) {
            out["methods_agree"] = agree;
            out["direct"] = summary_to_json(*hd);
            out["relative"] = summary_to_json(*hr);
        } else {
            out["method"] = h.method;
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "lattice " << lam.spec << "  index " << h.index
                  << "  <Lambda> " << h.min_vec << "\n";
        std::cout << "betti " << h.betti << "  torsion_order "
                  << h.torsion_order.str() << "  factors [";
        for (std::size_t k = 0; k < h.invariant_factors.size(); ++k)
            std::cout << (k ? " " : "") << h.invariant_factors[k].str();
        std::cout << "]\n";
        std::cout << "sfix_dim " << h.sfix_dim << "  sigma_prime_rank "
                  << sigma_rank << "\n";
        if (hd && hr)
            std::cout << "methods " << (agree ? "agree" : "DISAGREE") << "\n";
    }
    if (!agree) throw Error("direct and relative homology disagree");
    return 0;
}

int run_growth(const GlobalOpts& g, const std::string& link, const std::string& pd,
               const std::string& diagram_json, const std::string& family_spec,
               int tail, const std::string& out_path) {
    auto pres = presentation_from_flags(link, pd, diagram_json);
    FamilySpec fam = parse_family(family_spec);
    auto records = run_family(pres, fam, g.threads);

    // reference rate: log M(delta); first nonzero knot polynomial when
    // delta vanishes; none for links with delta = 0
    LaurentPoly delta = alexander_polynomial(pres);
    std::optional<double> reference;
    std::string reference_poly;
    std::string reference_kind = "alexander";
    if (delta.is_zero() && pres.d == 1) {
        for (int i = 2; i <= pres.N; ++i) {
            LaurentPoly di = higher_alexander_univariate(pres, i);
            if (!di.is_zero()) {
                delta = di;
                reference_kind = "first nonzero higher polynomial (i=" +
                                 std::to_string(i) + ")";
                break;
            }
        }
    }
    if (!delta.is_zero()) {
        MahlerOptions opts{g.tol, g.seed};
        reference = mahler(delta, opts).log_value;
        reference_poly = delta.to_string();
    }
    std::optional<RateEstimate> est;
    if (tail > 0 && tail <= static_cast<int>(records.size()))
        est = estimate_rate(records, tail, reference);

    std::ostringstream body;
    if (g.format == "csv") {
        emit_csv(records, body);
    } else if (g.format == "json") {
        json out;
        out["command"] = "growth";
        json recs = json::array();
        for (const auto& r : records) recs.push_back(record_to_json(r));
        out["records"] = recs;
        if (reference) {
            out["reference_log_m"] = *reference;
            out["reference_poly"] = reference_poly;
            out["reference_kind"] = reference_kind;
        }
        if (est) {
            json e;
            e["last"] = est->last;
            e["tail_max"] = est->tail_max;
            if (est->reference_log_m) e["reference_log_m"] = *est->reference_log_m;
            if (est->abs_gap) e["abs_gap"] = *est->abs_gap;
            out["estimate"] = e;
        }
        body << out.dump(2) << "\n";
    } else {
        body << "lattice  m  min_vec  betti  torsion_order  normalized_log\n";
        for (const auto& r : records) {
            if (r.failed) {
                body << r.lattice_spec << "  FAILED: " << r.error << "\n";
                continue;
            }
            body << r.lattice_spec << "  " << r.m << "  " << r.min_vec << "  "
                 << r.betti << "  " << r.torsion_order.str() << "  "
                 << r.normalized_log << "\n";
        }
        if (reference)
            body << "reference log M = " << *reference << "  (" << reference_kind
                 << ": " << reference_poly << ")\n";
        else
            body << "no reference rate (zero polynomial, several components)\n";
        if (est) {
            body << "last " << est->last << "  tail_max " << est->tail_max;
            if (est->abs_gap) body << "  gap " << *est->abs_gap;
            body << "\n";
        }
    }
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw Error("cannot write " + out_path);
        f << body.str();
    } else {
        std::cout << body.str();
    }
    for (const auto& r : records)
        if (r.failed) return 1;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Alexander polynomials, Mahler measures and homology of "
                 "finite abelian branched covers of links"};
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_option("--tol", g.tol, "quadrature tolerance on log M");
    app.add_option("--threads", g.threads, "worker threads for family sweeps");
    app.add_option("--seed", g.seed, "seed for root-finder start points");
    app.add_option("--format", g.format, "text | json | csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));

    auto* t = app.add_subcommand("table", "list built-in links");

    auto* a = app.add_subcommand("alex", "Alexander polynomial");
    std::string a_link, a_pd, a_json;
    a->add_option("--link", a_link, "built-in link name");
    a->add_option("--pd", a_pd, "PD code, e.g. \"X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]\"");
    a->add_option("--diagram-json", a_json, "diagram JSON file");

    auto* m = app.add_subcommand("mahler", "Mahler measure");
    std::string m_link, m_poly;
    m->add_option("--link", m_link, "built-in link name");
    m->add_option("--poly", m_poly, "polynomial, e.g. \"u1+u2-1+u1^-1+u2^-1\"");

    auto* c = app.add_subcommand("cover", "homology of one branched cover");
    std::string c_link, c_pd, c_json, c_lattice, c_method = "relative";
    c->add_option("--link", c_link, "built-in link name");
    c->add_option("--pd", c_pd, "PD code");
    c->add_option("--diagram-json", c_json, "diagram JSON file");
    c->add_option("--lattice", c_lattice,
                  "lattice spec: cyclic:7 | diag:3,2 | cols:2,1;-1,2")
        ->required();
    c->add_option("--method", c_method, "direct | relative | both");

    auto* gr = app.add_subcommand("growth", "torsion growth over a lattice family");
    std::string g_link, g_pd, g_json, g_family, g_out;
    int g_tail = 0;
    gr->add_option("--link", g_link, "built-in link name");
    gr->add_option("--pd", g_pd, "PD code");
    gr->add_option("--diagram-json", g_json, "diagram JSON file");
    gr->add_option("--family", g_family, "cyclic:60 | diag:12")->required();
    gr->add_option("--tail", g_tail, "records in the limsup proxy window");
    gr->add_option("--out", g_out, "write output to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors exit 2
    }

    try {
        if (t->parsed()) return run_table(g);
        if (a->parsed()) return run_alex(g, a_link, a_pd, a_json);
        if (m->parsed()) return run_mahler(g, m_link, m_poly);
        if (c->parsed())
            return run_cover(g, c_link, c_pd, c_json, c_lattice, c_method);
        if (gr->parsed())
            return run_growth(g, g_link, g_pd, g_json, g_family, g_tail, g_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
