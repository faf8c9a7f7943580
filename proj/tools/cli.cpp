#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gxcalc/catalog.hpp"
#include "gxcalc/catfile.hpp"
#include "gxcalc/consistency.hpp"
#include "gxcalc/diagrams.hpp"
#include "gxcalc/error.hpp"
#include "gxcalc/protocols.hpp"

namespace gxcalc::cli {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::UnknownName, "cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

bool looks_like_path(const std::string& s) {
    return s.find('/') != std::string::npos || s.ends_with(".cat");
}

SkeletalCategory load(const std::string& name_or_path) {
    if (looks_like_path(name_or_path)) return parse_category(read_file(name_or_path));
    return catalog_load(name_or_path);
}

json to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(row);
    }
    return rows;
}

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

void print_matrix(std::ostream& out, const Matrix& m, const std::string& indent = "  ") {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out << indent << "[";
        for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? ", " : "") << format_complex(m(i, j));
        out << "]\n";
    }
}

std::string path_string(const SkeletalCategory& c, const FusionTree& t) {
    std::string s;
    for (Label l : t.path(c.ring().unit())) s += (s.empty() ? "" : " ") + c.ring().name(l);
    return s;
}

json basis_json(const SkeletalCategory& c, const TreeBasis& b) {
    json out = json::array();
    for (const auto& t : b.trees()) {
        json p = json::array();
        for (Label l : t.path(c.ring().unit())) p.push_back(c.ring().name(l));
        out.push_back(p);
    }
    return out;
}

void print_basis(std::ostream& out, const SkeletalCategory& c, const TreeBasis& b) {
    out << "basis:\n";
    for (int k = 0; k < b.dimension(); ++k) out << "  " << k << ": " << path_string(c, b.trees()[k]) << "\n";
}

struct RepArgs {
    std::string cat;
    std::string object;
    int strands = 4;
    std::string total = "1";
};

void add_rep_options(CLI::App* sub, RepArgs& a) {
    sub->add_option("--cat", a.cat, "category name or .cat file")->required();
    sub->add_option("--object", a.object, "strand label")->required();
    sub->add_option("--strands", a.strands, "number of strands")->check(CLI::Range(2, 12));
    sub->add_option("--total", a.total, "total charge");
}

BraidRep make_rep(const SkeletalCategory& c, const RepArgs& a) {
    return build_rep(c, c.L(a.object), a.strands, c.L(a.total));
}

int cmd_validate(const std::string& target, double tol, std::ostream& out) {
    SkeletalCategory c = load(target);
    bool ok = true;
    auto list = [&](const std::string& title, const std::vector<std::string>& issues) {
        out << title << ": " << (issues.empty() ? "ok" : "FAILED") << "\n";
        for (const auto& s : issues) out << "  " << s << "\n";
        ok = ok && issues.empty();
    };
    out << "category: " << c.name() << "\n";
    list("ring", validate_ring(c.ring()));
    list("unitarity", verify_unitarity(c, std::max(tol, 1e-9)));
    auto report = [&](const std::string& title, const auto& fn) {
        try {
            ResidualReport r = fn(c);
            bool pass = r.max_residual < tol;
            out << title << ": " << (pass ? "ok" : "FAILED") << " max_residual " << r.max_residual << " checked "
                << r.count_checked << "\n";
            if (!pass) out << "  worst: " << r.worst_description << "\n";
            ok = ok && pass;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::MissingSymbol) throw;
            out << title << ": skipped (" << e.what() << ")\n";
        }
    };
    report("pentagon", check_pentagon);
    report("hexagon", check_hexagon);
    bool graded = false;
    for (Label a : c.ring().labels()) graded = graded || c.ring().grade(a) != 0;
    if (graded) report("heptagon", check_heptagon);
    out << "result: " << (ok ? "pass" : "fail") << "\n";
    return ok ? kOk : kDomainError;
}

int cmd_rep(const RepArgs& a, bool as_json, std::ostream& out) {
    SkeletalCategory c = load(a.cat);
    BraidRep r = make_rep(c, a);
    if (as_json) {
        json j;
        j["category"] = c.name();
        j["object"] = a.object;
        j["strands"] = a.strands;
        j["total"] = a.total;
        j["basis"] = basis_json(c, r.basis);
        j["generators"] = json::array();
        for (const auto& g : r.generators) j["generators"].push_back(to_json(g));
        out << j.dump(2) << "\n";
        return kOk;
    }
    out << "category: " << c.name() << "\nobject: " << a.object << "\nstrands: " << a.strands << "\ntotal: " << a.total
        << "\ndimension: " << r.basis.dimension() << "\n";
    print_basis(out, c, r.basis);
    for (std::size_t k = 0; k < r.generators.size(); ++k) {
        out << "sigma_" << k + 1 << ":\n";
        print_matrix(out, r.generators[k]);
    }
    return kOk;
}

int cmd_closure(const RepArgs& a, long bound, std::ostream& out) {
    SkeletalCategory c = load(a.cat);
    BraidRep r = make_rep(c, a);
    ClosureResult res = projective_closure(r, bound);
    out << "category: " << c.name() << "\ndimension: " << r.basis.dimension() << "\nbound: " << bound << "\n";
    if (res.order)
        out << "order: " << *res.order << "\n";
    else
        out << "order: exceeds bound\n";
    return kOk;
}

int cmd_density(const RepArgs& a, long steps, std::ostream& out) {
    SkeletalCategory c = load(a.cat);
    DensityVerdict v = density_probe(make_rep(c, a), steps);
    out << "verdict: " << v.describe() << "\n";
    return kOk;
}

int cmd_eval(const std::string& file, std::string cat, std::string total, const std::string& strategy, bool confluence,
             bool as_json, std::ostream& out) {
    Diagram d = parse_diagram(read_file(file));
    if (cat.empty() && d.meta.count("cat")) cat = d.meta.at("cat");
    if (total.empty() && d.meta.count("total")) total = d.meta.at("total");
    if (cat.empty()) throw CLI::RequiredError("--cat (or a '# cat:' line in the diagram)");
    SkeletalCategory c = load(cat);
    EvalOptions o;
    o.strategy = strategy == "detour" ? Strategy::PentagonDetour : Strategy::Direct;
    o.cross_check = confluence;
    if (!total.empty()) o.total = c.L(total);
    EvalResult r = evaluate(d, c, o);
    if (as_json) {
        json j;
        j["category"] = c.name();
        j["closed"] = r.closed;
        if (r.closed)
            j["scalar"] = to_json(r.scalar);
        else
            j["matrix"] = to_json(r.matrix);
        j["source"] = basis_json(c, r.source);
        j["target"] = basis_json(c, r.target);
        j["consumed"] = r.consumed;
        out << j.dump(2) << "\n";
        return kOk;
    }
    out << "category: " << c.name() << "\n";
    if (r.closed) {
        out << "scalar: " << format_complex(r.scalar) << "\n";
    } else {
        out << "source dimension: " << r.source.dimension() << "\ntarget dimension: " << r.target.dimension()
            << "\nmatrix:\n";
        print_matrix(out, r.matrix);
    }
    std::string used;
    for (const auto& s : r.consumed) used += (used.empty() ? "" : " ") + s;
    out << "symbols: " << used << "\n";
    return kOk;
}

void print_tgate(std::ostream& out, const std::string& title, const ProtocolResult& r) {
    out << title << ":\n  t11: " << format_complex(r.t11) << "\n  tpsipsi: " << format_complex(r.tpsipsi)
        << "\n  offdiag: " << r.offdiag_max << "\n  ratio: " << format_complex(r.ratio) << "\n";
}

int cmd_tgate(const std::string& cat, const std::string& method, bool as_json, std::ostream& out) {
    SkeletalCategory c = load(cat);
    std::optional<ProtocolResult> closed, diagram;
    if (method != "diagram") closed = tgate_closed_form(c);
    if (method != "closed") diagram = tgate_diagrammatic(c);
    const ProtocolResult& main = closed ? *closed : *diagram;
    if (as_json) {
        json j;
        j["category"] = c.name();
        j["ratio"] = to_json(main.ratio);
        auto part = [&](const ProtocolResult& r) {
            return json{{"t11", to_json(r.t11)}, {"tpsipsi", to_json(r.tpsipsi)}, {"offdiag", r.offdiag_max},
                        {"ratio", to_json(r.ratio)}};
        };
        if (closed) j["closed"] = part(*closed);
        if (diagram) j["diagram"] = part(*diagram);
        if (closed && diagram) j["deviation"] = std::abs(closed->ratio - diagram->ratio);
        out << j.dump(2) << "\n";
        return kOk;
    }
    out << "category: " << c.name() << "\n";
    if (closed) print_tgate(out, "closed", *closed);
    if (diagram) print_tgate(out, "diagram", *diagram);
    out << "ratio: " << format_complex(main.ratio) << "\n";
    if (closed && diagram) {
        double dev = std::abs(closed->ratio - diagram->ratio);
        out << "cross-method deviation " << (dev < 1e-9 ? "< 1e-9" : ">= 1e-9") << " (" << dev << ")\n";
        if (dev >= 1e-9) return kDomainError;
    }
    return kOk;
}

int cmd_protocol(const std::string& file, std::string cat, bool as_json, std::ostream& out) {
    Diagram d = parse_diagram(read_file(file));
    if (cat.empty() && d.meta.count("cat")) cat = d.meta.at("cat");
    if (cat.empty()) throw CLI::RequiredError("--cat (or a '# cat:' line in the script)");
    SkeletalCategory c = load(cat);
    ProtocolRun r = run_protocol(d, c);
    if (as_json) {
        json j;
        j["category"] = c.name();
        j["logical"] = to_json(r.logical);
        j["normalized"] = to_json(r.normalized);
        j["leakage"] = r.leakage;
        j["pre_annihilation_leakage"] = r.pre_annihilation_leakage;
        out << j.dump(2) << "\n";
        return kOk;
    }
    out << "category: " << c.name() << "\nlogical:\n";
    print_matrix(out, r.logical);
    out << "normalized:\n";
    print_matrix(out, r.normalized);
    out << "leakage: " << r.leakage << "\npre-annihilation leakage: " << r.pre_annihilation_leakage << "\n";
    return kOk;
}

int cmd_catalog(const std::string& emit, const std::string& dir, std::ostream& out) {
    if (!dir.empty()) {
        std::filesystem::create_directories(dir);
        for (const auto& n : catalog_names()) {
            std::ofstream f(std::filesystem::path(dir) / (n + ".cat"), std::ios::binary);
            f << emit_category(catalog_builtin(n));
            out << "wrote " << n << ".cat\n";
        }
        return kOk;
    }
    if (!emit.empty()) {
        out << emit_category(catalog_load(emit));
        return kOk;
    }
    for (const auto& n : catalog_names()) out << n << "\n";
    return kOk;
}

// All R-symbols with at least one defect argument.
std::vector<RKey> defect_r_keys(const SkeletalCategory& c) {
    const FusionRing& r = c.ring();
    std::vector<RKey> keys;
    for (Label a : r.labels())
        for (Label b : r.labels()) {
            if (r.grade(a) == 0 && r.grade(b) == 0) continue;
            for (Label ch : r.channels(r.act(r.grade(a), b), a)) keys.push_back({r.act(r.grade(a), b).id, a.id, ch.id});
        }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return keys;
}

int cmd_fit_r(const std::string& cat, std::uint64_t seed, int restarts, std::ostream& out) {
    SkeletalCategory c = load(cat);
    SolverOptions o;
    o.seed = seed;
    o.restarts = restarts;
    PhaseAnsatz a = solve_defect_R(c, defect_r_keys(c), o);
    const FusionRing& r = c.ring();
    out << "category: " << c.name() << "\nresidual: " << a.residual << "\n";
    for (std::size_t k = 0; k < a.unknowns.size(); ++k) {
        const auto& u = a.unknowns[k];
        out << "R " << r.name(Label{u[0]}) << " " << r.name(Label{u[1]}) << " " << r.name(Label{u[2]}) << " = "
            << format_complex(a.values[k]) << "\n";
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"gxcalc: G-crossed braided category calculator"};
    app.require_subcommand(1);
    // global flags may follow the subcommand
    app.fallthrough();
    double tol = 1e-10;
    std::uint64_t seed = 0x5eed;
    bool as_json = false;
    app.add_option("--tol", tol, "residual tolerance");
    app.add_option("--seed", seed, "random seed (fit-r)");
    app.add_flag("--json", as_json, "JSON output");

    std::string path;
    auto* validate = app.add_subcommand("validate", "run all consistency checks on a category");
    validate->add_option("category", path, "catalog name or .cat file")->required();

    RepArgs rep_args;
    auto* rep = app.add_subcommand("rep", "braid group generator matrices");
    add_rep_options(rep, rep_args);

    long bound = 100000;
    auto* closure = app.add_subcommand("closure", "order of the projective image");
    add_rep_options(closure, rep_args);
    closure->add_option("--bound", bound, "maximum group order explored");

    long steps = 100000;
    auto* density = app.add_subcommand("density", "search for a finite closure");
    add_rep_options(density, rep_args);
    density->add_option("--steps", steps);

    std::string cat, total, strategy = "direct";
    bool confluence = false;
    auto* eval = app.add_subcommand("eval", "evaluate a diagram file");
    eval->add_option("diagram", path)->required();
    eval->add_option("--cat", cat);
    eval->add_option("--total", total);
    eval->add_option("--strategy", strategy)->check(CLI::IsMember({"direct", "detour"}));
    eval->add_flag("--confluence", confluence, "cross-check both strategies");

    std::string method = "both";
    std::string tcat = "bilayer_ising_z2x_partial";
    auto* tgate = app.add_subcommand("tgate", "T-gate ratio");
    tgate->add_option("--cat", tcat);
    tgate->add_option("--method", method)->check(CLI::IsMember({"closed", "diagram", "both"}));

    auto* protocol = app.add_subcommand("protocol", "run a defect braiding script");
    protocol->add_option("script", path)->required();
    protocol->add_option("--cat", cat);

    std::string emit, dir;
    auto* catalog = app.add_subcommand("catalog", "list or emit built-in categories");
    catalog->add_option("--emit", emit, "print one category file");
    catalog->add_option("--write-dir", dir, "write every category file to a directory");

    int restarts = 64;
    auto* fit = app.add_subcommand("fit-r", "solve the heptagon for defect R-symbols");
    fit->add_option("--cat", cat)->required();
    fit->add_option("--restarts", restarts);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsageError;
    }

    try {
        if (*validate) return cmd_validate(path, tol, out);
        if (*rep) return cmd_rep(rep_args, as_json, out);
        if (*closure) return cmd_closure(rep_args, bound, out);
        if (*density) return cmd_density(rep_args, steps, out);
        if (*eval) return cmd_eval(path, cat, total, strategy, confluence, as_json, out);
        if (*tgate) return cmd_tgate(tcat, method, as_json, out);
        if (*protocol) return cmd_protocol(path, cat, as_json, out);
        if (*catalog) return cmd_catalog(emit, dir, out);
        if (*fit) return cmd_fit_r(cat, seed, restarts, out);
    } catch (const CLI::RequiredError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsageError;
    } catch (const SyntaxError& e) {
        err << e.name() << ": " << e.what() << "\n";
        return kParseError;
    } catch (const Error& e) {
        err << e.name() << ": " << e.what() << "\n";
        return kDomainError;
    }
    return kUsageError;
}

}  // namespace gxcalc::cli
