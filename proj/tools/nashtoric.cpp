// Command-line surface: analyze cones, resolve them, locate arcs, lift
// curve germs to surfaces, emit jet equations, and compute blowup strict
// transforms.  Reports are JSON with stable field order so identical
// invocations are byte-identical.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "nashtoric/arc.hpp"
#include "nashtoric/arc_order.hpp"
#include "nashtoric/cone.hpp"
#include "nashtoric/errors.hpp"
#include "nashtoric/fan.hpp"
#include "nashtoric/germ.hpp"
#include "nashtoric/parser.hpp"
#include "nashtoric/resolution.hpp"
#include "nashtoric/series.hpp"

namespace nt = nashtoric;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

json vec_to_json(const nt::Vec& v) {
    json a = json::array();
    for (const nt::Int& x : v) {
        if (x.fits_slong_p())
            a.push_back(x.get_si());
        else
            a.push_back(x.get_str());
    }
    return a;
}

json rays_to_json(const std::vector<nt::Vec>& rays) {
    json a = json::array();
    for (const nt::Vec& r : rays) a.push_back(vec_to_json(r));
    return a;
}

nt::Vec parse_ray_flag(const std::string& s, int rank) {
    nt::Vec v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(nt::Int(item));
    if ((int)v.size() != rank)
        throw std::invalid_argument("ray has " + std::to_string(v.size()) +
                                    " entries, expected " + std::to_string(rank));
    return v;
}

nt::Cone load_cone(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open cone file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("cone file " + path + ": " + e.what());
    }
    if (!doc.contains("lattice_rank") || !doc.contains("rays"))
        throw std::invalid_argument("cone file " + path +
                                    ": expected fields lattice_rank and rays");
    int rank = doc["lattice_rank"].get<int>();
    std::vector<nt::Vec> rays;
    for (const json& jr : doc["rays"]) {
        nt::Vec r;
        for (const json& jx : jr) {
            if (jx.is_string())
                r.push_back(nt::Int(jx.get<std::string>()));
            else
                r.push_back(nt::Int((long)jx.get<long long>()));
        }
        rays.push_back(std::move(r));
    }
    return nt::make_cone(rays, rank);
}

std::string rat_str(const nt::Rat& q) {
    return q.get_str();
}

// Deterministic text form of a series; variables named by the callback.
template <typename Namer>
std::string series_str(const nt::Series<nt::Rat>& f, Namer name) {
    if (f.terms.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : f.terms) {
        std::string term;
        nt::Rat a = c;
        bool neg = a < 0;
        if (neg) a = -a;
        std::vector<std::string> factors;
        bool all_zero = true;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            all_zero = false;
            std::string v = name(i);
            if (e[i] > 1) v += "^" + std::to_string(e[i]);
            factors.push_back(v);
        }
        if (a != 1 || all_zero) factors.insert(factors.begin(), rat_str(a));
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i) term += "*";
            term += factors[i];
        }
        if (out.empty())
            out = (neg ? "-" : "") + term;
        else
            out += (neg ? " - " : " + ") + term;
    }
    return out;
}

std::string x_namer(std::size_t i) { return "x" + std::to_string(i + 1); }

std::string curve_str(const nt::Series<nt::Rat>& f) {
    return series_str(f, [](std::size_t) { return std::string("s"); });
}

std::string surface_str(const nt::Series<nt::Rat>& f) {
    return series_str(f, [](std::size_t i) { return std::string(i == 0 ? "s" : "t"); });
}

json fan_to_json(const nt::Fan& f) {
    json out;
    out["rays"] = rays_to_json(nt::fan_rays(f));
    json cones = json::array();
    for (const nt::Cone& c : f.max_cones) cones.push_back(rays_to_json(c.rays));
    out["maximal_cones"] = cones;
    return out;
}

json log_to_json(const nt::SubdivisionLog& log) {
    json steps = json::array();
    for (const nt::SubdivisionStep& s : log.steps) {
        json step;
        step["phase"] = nt::phase_name(s.phase);
        step["center"] = vec_to_json(s.center);
        steps.push_back(std::move(step));
    }
    return steps;
}

json certificates_to_json(const nt::Fan& f, const nt::Cone& c) {
    json out;
    out["subdivision"] = nt::is_subdivision(f, c);
    out["regular"] = nt::is_regular_fan(f);
    out["preserves_regular_faces"] = nt::preserves_regular_faces(f, c);
    out["divisorial"] = nt::is_divisorial(f, c);
    return out;
}

void emit(const json& report, const std::string& output) {
    std::string text = report.dump(2) + "\n";
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output);
        if (!out) throw std::invalid_argument("cannot write output file: " + output);
        out << text;
    }
}

json report_header(const std::string& command) {
    json r;
    r["tool"] = "nashtoric";
    r["version"] = kVersion;
    r["command"] = command;
    return r;
}

int infer_nvars(const std::string& equation) {
    int n = 0;
    for (std::size_t i = 0; i + 1 < equation.size(); ++i) {
        if (equation[i] != 'x' || !std::isdigit((unsigned char)equation[i + 1])) continue;
        if (i > 0 && (std::isalnum((unsigned char)equation[i - 1]) || equation[i - 1] == '_'))
            continue;
        int v = 0;
        std::size_t j = i + 1;
        while (j < equation.size() && std::isdigit((unsigned char)equation[j]))
            v = v * 10 + (equation[j++] - '0');
        n = std::max(n, v);
    }
    if (n == 0) throw std::invalid_argument("equation mentions no variable x1..xn");
    return n;
}

// Line flag: comma-separated linear expressions in s and t, one per
// coordinate, e.g. "s,-s,t,-t,0".
nt::LineSpec<nt::Rat> parse_line_flag(const std::string& src) {
    std::vector<nt::Rat> z, w;
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t i = 0; i <= src.size(); ++i) {
        if (i < src.size() && src[i] == '(') ++depth;
        if (i < src.size() && src[i] == ')') --depth;
        if (i == src.size() || (src[i] == ',' && depth == 0)) {
            std::string part = src.substr(start, i - start);
            nt::detail::PolyParser p(part, {{"s", 0}, {"t", 1}}, false);
            nt::detail::ParsedPoly poly = p.parse();
            nt::Rat zs = 0, ws = 0;
            for (const auto& [e, c] : poly.terms) {
                if (e[0] == 1 && e[1] == 0)
                    zs = c;
                else if (e[0] == 0 && e[1] == 1)
                    ws = c;
                else
                    throw std::invalid_argument("line component must be linear in s and t");
            }
            z.push_back(zs);
            w.push_back(ws);
            start = i + 1;
        }
    }
    return nt::make_line(std::move(z), std::move(w));
}

int cmd_analyze(const std::string& cone_file, const std::string& output) {
    nt::Cone c = load_cone(cone_file);
    json r = report_header("analyze");
    r["inputs"] = {{"cone_file", std::filesystem::path(cone_file).filename().string()},
                   {"lattice_rank", c.rank},
                   {"rays", rays_to_json(c.rays)}};
    json results;
    results["regular"] = nt::is_regular_cone(c);
    results["simplicial"] = nt::is_simplicial(nt::cone_as_face(c));
    if ((int)c.rays.size() == c.rank) {
        nt::Int m = nt::multiplicity(nt::cone_as_face(c));
        results["multiplicity"] = m.fits_slong_p() ? json(m.get_si()) : json(m.get_str());
    }
    json sing = json::array();
    for (const nt::Face& f : nt::singular_faces(c)) {
        json jf;
        jf["dim"] = f.dim;
        jf["rays"] = rays_to_json(f.rays);
        sing.push_back(std::move(jf));
    }
    results["singular_faces"] = sing;
    if (nt::is_regular_cone(c)) {
        results["minimal_s_elements"] = json::array();
        results["essential_divisor_count"] = 0;
        results["note"] = "smooth: no essential divisors";
    } else {
        nt::MinimalElementReport rep = nt::minimal_elements(c);
        results["candidate_count"] = (long long)rep.candidate_count;
        results["s_candidate_count"] = (long long)rep.s_candidate_count;
        results["minimal_s_elements"] = rays_to_json(rep.minimal_elements);
        results["essential_divisor_count"] = (long long)rep.minimal_elements.size();
    }
    r["results"] = std::move(results);
    emit(r, output);
    return 0;
}

int cmd_resolve(const std::string& cone_file, const std::string& avoid,
                bool two_d_minimal, const std::string& output) {
    nt::Cone c = load_cone(cone_file);
    json r = report_header("resolve");
    json inputs = {{"cone_file", std::filesystem::path(cone_file).filename().string()},
                   {"lattice_rank", c.rank},
                   {"rays", rays_to_json(c.rays)}};
    nt::Fan fan = nt::trivial_fan(c);
    nt::SubdivisionLog log;
    if (two_d_minimal && !avoid.empty())
        throw std::invalid_argument("--avoid and --2d-minimal are mutually exclusive");
    if (two_d_minimal) {
        inputs["mode"] = "2d-minimal";
        auto [f, new_rays] = nt::hj_minimal_resolution_2d(c);
        fan = f;
        for (const nt::Vec& v : new_rays)
            log.steps.push_back({v, nt::SubdivisionPhase::TwoDimMinimal});
    } else if (!avoid.empty()) {
        inputs["mode"] = "avoid";
        nt::Vec v = parse_ray_flag(avoid, c.rank);
        inputs["avoid"] = vec_to_json(v);
        auto [f, l] = nt::avoid_ray(c, v);
        fan = f;
        log = l;
    } else {
        inputs["mode"] = "full";
        auto [f, l] = nt::resolve(c);
        fan = f;
        log = l;
    }
    r["inputs"] = std::move(inputs);
    json results = fan_to_json(fan);
    results["exceptional_rays"] = rays_to_json(nt::exceptional_rays(fan, c));
    results["log"] = log_to_json(log);
    results["certificates"] = certificates_to_json(fan, c);
    r["results"] = std::move(results);
    emit(r, output);
    return 0;
}

int cmd_arc(const std::string& cone_file, const std::string& series,
            const std::string& monomial, bool with_fan, long trunc,
            const std::string& output) {
    nt::Cone c = load_cone(cone_file);
    if (series.empty() == monomial.empty())
        throw std::invalid_argument("specify exactly one of --series or --monomial");
    nt::TorusArc arc = series.empty()
                           ? nt::monomial_arc(parse_ray_flag(monomial, c.rank), trunc)
                           : nt::parse_arc(series, trunc);
    if ((int)arc.components.size() != c.rank)
        throw std::invalid_argument("arc has " + std::to_string(arc.components.size()) +
                                    " components, expected " + std::to_string(c.rank));
    json r = report_header("arc");
    json inputs = {{"cone_file", std::filesystem::path(cone_file).filename().string()},
                   {"lattice_rank", c.rank},
                   {"rays", rays_to_json(c.rays)},
                   {"truncation_order", trunc}};
    if (!series.empty()) inputs["series"] = series;
    if (!monomial.empty()) inputs["monomial"] = monomial;
    r["inputs"] = std::move(inputs);

    nt::Vec v = nt::valuation_of_arc(arc);
    nt::Face orbit = nt::orbit_of_arc(c, arc);
    json results;
    results["valuation"] = vec_to_json(v);
    results["orbit_face"] = {{"dim", orbit.dim}, {"rays", rays_to_json(orbit.rays)}};
    results["special_point_in_singular_locus"] = !nt::is_regular(orbit);
    if (with_fan) {
        auto [fan, log] = nt::resolve(c);
        auto [cone, face] = nt::lift_orbit(fan, arc);
        json lifted;
        lifted["fan"] = fan_to_json(fan);
        lifted["containing_cone"] = rays_to_json(cone.rays);
        lifted["orbit_face"] = {{"dim", face.dim}, {"rays", rays_to_json(face.rays)}};
        results["lifted"] = std::move(lifted);
    }
    r["results"] = std::move(results);
    emit(r, output);
    return 0;
}

int cmd_germ(const std::string& equation, const std::string& line_flag, int order,
             const std::vector<std::string>& tails, const std::string& output) {
    nt::LineSpec<nt::Rat> line = parse_line_flag(line_flag);
    int n = (int)line.z.size();
    nt::Series<nt::Rat> f = nt::parse_polynomial(equation, (std::size_t)n);
    std::map<int, nt::Series<nt::Rat>> forced;
    for (const std::string& t : tails) {
        std::size_t colon = t.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("--curve-tail expects INDEX:SERIES, e.g. 3:s^2");
        int idx = std::stoi(t.substr(0, colon));
        if (idx < 1 || idx > n)
            throw std::invalid_argument("--curve-tail index out of range");
        forced[idx - 1] = nt::parse_univariate(t.substr(colon + 1), "s", order);
    }
    json r = report_header("germ");
    json jt = json::array();
    for (const std::string& t : tails) jt.push_back(t);
    r["inputs"] = {{"equation", equation},
                   {"line", line_flag},
                   {"order", order},
                   {"curve_tails", jt}};

    auto parts = nt::homogeneous_decomposition(f);
    int m = parts.begin()->first;
    const nt::Series<nt::Rat>& fm = parts.begin()->second;
    if (!nt::line_on_cone(fm, line))
        throw std::invalid_argument("hypothesis failed: line is not on the tangent cone");
    if (!nt::dfm_surjective(fm, line))
        throw std::invalid_argument("hypothesis failed: surjectivity hypothesis violated");

    std::vector<nt::Series<nt::Rat>> phi =
        nt::curve_on_hypersurface(f, line.z, order, forced);
    nt::SurfaceGerm<nt::Rat> germ = nt::extend_curve_to_surface(f, phi, line, order);

    json results;
    results["multiplicity"] = m;
    results["dfm_surjective"] = true;
    json jc = json::array();
    for (const auto& comp : phi) jc.push_back(curve_str(comp));
    results["curve"] = jc;
    json js = json::array();
    for (const auto& comp : germ.components) js.push_back(surface_str(comp));
    results["surface"] = js;
    auto res = nt::residual_order(f, germ.components);
    results["residual_order"] =
        res ? json(*res) : json("exceeds cap " + std::to_string(germ.residual_floor - 1));
    results["residual_floor"] = germ.residual_floor;
    json checks;
    checks["restriction_matches_curve"] = true;  // enforced inside the lift
    checks["tangent_plane_matches_line"] = true;
    checks["residual_at_least_m_plus_order"] = !res.has_value() || *res >= germ.residual_floor;
    results["checks"] = std::move(checks);
    r["results"] = std::move(results);
    emit(r, output);
    return 0;
}

int cmd_jets(const std::string& equation, int order, const std::string& output) {
    int n = infer_nvars(equation);
    nt::Series<nt::Rat> f = nt::parse_polynomial(equation, (std::size_t)n);
    std::vector<nt::Series<nt::Rat>> eqs = nt::jet_equations(f, order);
    json r = report_header("jets");
    r["inputs"] = {{"equation", equation}, {"order", order}, {"variables", n}};
    json results;
    results["jet_variables"] = "x<i>_<j> = coefficient of t^j in the i-th coordinate";
    json je = json::array();
    for (const auto& eq : eqs)
        je.push_back(series_str(eq, [&](std::size_t k) {
            std::size_t i = k / (std::size_t)(order + 1), j = k % (std::size_t)(order + 1);
            return "x" + std::to_string(i + 1) + "_" + std::to_string(j);
        }));
    results["equations"] = je;
    r["results"] = std::move(results);
    emit(r, output);
    return 0;
}

int cmd_blowup(const std::string& equation, int chart, const std::string& output) {
    int n = infer_nvars(equation);
    nt::Series<nt::Rat> f = nt::parse_polynomial(equation, (std::size_t)n);
    if (chart < 1 || chart > n)
        throw std::invalid_argument("--chart must be between 1 and " + std::to_string(n));
    nt::Series<nt::Rat> g = nt::blowup_chart_strict_transform(f, chart - 1);
    json r = report_header("blowup");
    r["inputs"] = {{"equation", equation}, {"chart", chart}, {"variables", n}};
    json results;
    results["strict_transform"] = series_str(g, x_namer);
    r["results"] = std::move(results);
    emit(r, output);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toolkit for essential divisors, toric resolutions, arcs and germ lifting"};
    app.require_subcommand(1);
    std::string output;
    app.add_option("--output", output, "write the report to FILE instead of stdout");

    std::string an_cone;
    CLI::App* analyze = app.add_subcommand("analyze", "singular faces and minimal S-elements of a cone");
    analyze->add_option("cone", an_cone, "ConeDocument JSON file")->required();

    std::string rs_cone, rs_avoid;
    bool rs_2d = false;
    CLI::App* resolve = app.add_subcommand("resolve", "equivariant resolution with certificates");
    resolve->add_option("cone", rs_cone, "ConeDocument JSON file")->required();
    resolve->add_option("--avoid", rs_avoid, "produce a divisorial resolution avoiding this ray (comma-separated)");
    resolve->add_flag("--2d-minimal", rs_2d, "minimal resolution of a two-dimensional cone");

    std::string ar_cone, ar_series, ar_monomial;
    bool ar_fan = false;
    long ar_trunc = 16;
    CLI::App* arc = app.add_subcommand("arc", "valuation and orbit of an arc through the torus");
    arc->add_option("cone", ar_cone, "ConeDocument JSON file")->required();
    arc->add_option("--series", ar_series, "comma-separated Laurent components in t");
    arc->add_option("--monomial", ar_monomial, "lattice vector v for the arc (t^v1,...,t^vn)");
    arc->add_flag("--fan", ar_fan, "also lift the arc through the resolution fan");
    arc->add_option("--trunc", ar_trunc, "truncation order for parsed components");

    std::string gm_eq, gm_line;
    int gm_order = 0;
    std::vector<std::string> gm_tails;
    CLI::App* germ = app.add_subcommand("germ", "extend a curve on a hypersurface to a surface germ");
    germ->add_option("--equation", gm_eq, "hypersurface equation in x1..xn")->required();
    germ->add_option("--line", gm_line, "plane s z + t w as components linear in s,t")->required();
    germ->add_option("--order", gm_order, "curve truncation order")->required();
    germ->add_option("--curve-tail", gm_tails, "forced curve tail INDEX:SERIES (in s, degree >= 2)");

    std::string jt_eq;
    int jt_order = 0;
    CLI::App* jets = app.add_subcommand("jets", "equations of the jet scheme of a hypersurface");
    jets->add_option("--equation", jt_eq, "hypersurface equation in x1..xn")->required();
    jets->add_option("--order", jt_order, "jet order m")->required();

    std::string bl_eq;
    int bl_chart = 0;
    CLI::App* blowup = app.add_subcommand("blowup", "strict transform in a chart of the origin blowup");
    blowup->add_option("--equation", bl_eq, "hypersurface equation in x1..xn")->required();
    blowup->add_option("--chart", bl_chart, "chart index (1-based)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*analyze) return cmd_analyze(an_cone, output);
        if (*resolve) return cmd_resolve(rs_cone, rs_avoid, rs_2d, output);
        if (*arc) return cmd_arc(ar_cone, ar_series, ar_monomial, ar_fan, ar_trunc, output);
        if (*germ) return cmd_germ(gm_eq, gm_line, gm_order, gm_tails, output);
        if (*jets) return cmd_jets(jt_eq, jt_order, output);
        if (*blowup) return cmd_blowup(bl_eq, bl_chart, output);
    } catch (const nt::RefusalError& e) {
        if (*resolve && !rs_avoid.empty())
            std::cerr << "error: essential divisor cannot be avoided (Theorem: Nash map bijective)"
                      << std::endl;
        else
            std::cerr << "error: " << e.what() << std::endl;
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << std::endl;
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    }
    return 0;
}
