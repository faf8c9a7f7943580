// Acceptance checks. `acceptance N` runs criterion N, `acceptance` runs all.
// Each prints one line "criterion N: PASS|FAIL <detail>"; the exit status
// is nonzero if any selected criterion fails.

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gxcalc/catalog.hpp"
#include "gxcalc/consistency.hpp"
#include "gxcalc/protocols.hpp"

using namespace gxcalc;

namespace {

constexpr Complex I{0.0, 1.0};

Complex ei(double a) { return std::polar(1.0, a); }

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    // Records a named check; the first failure is reported by name.
    void require(bool ok, const std::string& what, double value) {
        if (!ok && pass) detail << "failed " << what << " (" << value << ") ";
        pass = pass && ok;
    }
};

const SkeletalCategory& cat(const std::string& name) {
    static std::map<std::string, SkeletalCategory> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, catalog_builtin(name)).first;
    return it->second;
}

BraidRep rep(const SkeletalCategory& c, const char* x, int n, const char* total) {
    return build_rep(c, c.L(x), n, c.L(total));
}

Matrix diag(std::vector<Complex> d) {
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
    return m;
}

std::string read(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::filesystem::path kCorpus = std::filesystem::path(GXCALC_SOURCE_DIR) / "corpus";

Verdict criterion1() {
    Verdict v;
    BraidRep r = rep(cat("tc_z2x_restricted"), "sigma+", 4, "1");
    Complex w = ei(-kPi / 8);
    Matrix s1 = w * diag({1.0, I});
    Matrix s2(2, 2);
    s2 << 1.0 + I, I - 1.0, 1.0 - I, 1.0 + I;
    s2 *= w / 2.0;
    double d1 = max_abs_diff(r.generators[0], s1);
    double d3 = max_abs_diff(r.generators[2], s1);
    double d2 = max_abs_diff(r.generators[1], s2);
    v.require(d1 < 1e-9, "rho(sigma_1)", d1);
    v.require(d3 < 1e-9, "rho(sigma_3)", d3);
    v.require(d2 < 1e-9, "rho(sigma_2) against the printed matrix", d2);
    v.detail << "max|diff| sigma_1 " << d1 << ", sigma_3 " << d3 << ", sigma_2 " << d2
             << "; printed sigma_2 unitarity defect " << unitarity_defect(s2);
    return v;
}

Verdict criterion2() {
    Verdict v;
    BraidRep a = rep(cat("tc_z2x_restricted"), "sigma+", 4, "1");
    BraidRep b = rep(cat("ising1"), "sigma", 4, "1");
    double worst = 0.0;
    v.require(a.generators.size() == b.generators.size(), "generator count", static_cast<double>(a.generators.size()));
    for (std::size_t i = 0; i < a.generators.size() && i < b.generators.size(); ++i)
        worst = std::max(worst, max_abs_diff(a.generators[i], b.generators[i]));
    v.require(worst < 1e-9, "generator equality", worst);
    v.detail << "max|diff| " << worst;
    return v;
}

Verdict criterion3() {
    Verdict v;
    ClosureResult c = projective_closure(rep(cat("tc_z2x_restricted"), "sigma+", 4, "1"), 100000);
    long order = c.order.value_or(-1);
    v.require(order == 24, "closure order", static_cast<double>(order));
    v.detail << "order " << order;
    return v;
}

// Criterion 4 on a given category; reused by the solver criterion.
void qutrit_checks(const SkeletalCategory& ty, Verdict& v) {
    BraidRep r = rep(ty, "X1", 4, "1");
    Label X = ty.L("X1");
    Complex o = Complex(-1.0, std::sqrt(3.0)) / 2.0;
    Matrix printed(3, 3);
    printed << 1.0, o, o, o, 1.0, o, o, o, 1.0;
    ScalarFit fit = scalar_fit(r.generators[1], printed);
    v.require(fit.residual < 1e-9, "rho(sigma_2) scalar fit", fit.residual);
    Matrix d = diag({ty.r(X, X, ty.L("1")), ty.r(X, X, ty.L("w")), ty.r(X, X, ty.L("w*"))});
    double d1 = max_abs_diff(r.generators[0], d);
    v.require(d1 < 1e-9, "rho(sigma_1) diagonal of defect R", d1);
    ClosureResult c = projective_closure(r, 100000);
    v.require(c.order.has_value(), "finite closure", static_cast<double>(c.elements.size()));
    v.detail << "sigma_2 fit residual " << fit.residual << " (|lambda| " << std::abs(fit.scalar) << "), sigma_1 "
             << d1 << ", closure order " << c.order.value_or(-1);
}

Verdict criterion4() {
    Verdict v;
    qutrit_checks(cat("ty_z3"), v);
    return v;
}

Verdict criterion5() {
    Verdict v;
    const SkeletalCategory& c = cat("bilayer_ising_z2x_partial");
    Complex target = ei(kPi / 4);
    ProtocolResult f = tgate_closed_form(c);
    TGateOptions opts;
    opts.assume_trivial_u_eta = true;
    ProtocolResult d = tgate_diagrammatic(c, opts);
    double ef = std::abs(f.ratio - target), ed = std::abs(d.ratio - target);
    v.require(ef < 1e-9, "closed-form ratio", ef);
    v.require(ed < 1e-9, "diagrammatic ratio", ed);
    double off = std::max(f.offdiag_max / std::abs(f.t11), d.offdiag_max / std::abs(d.t11));
    v.require(off < 1e-12, "off-diagonal", off);
    double dev = std::max(std::abs(f.t11 / f.t11 - d.t11 / d.t11), std::abs(f.tpsipsi / f.t11 - d.tpsipsi / d.t11));
    v.require(dev < 1e-9, "cross-method deviation", dev);

    ProtocolRun run = run_protocol(parse_diagram(read(kCorpus / "t_gate_protocol.dsl")), c);
    double pd = projective_distance(run.normalized, diag({1.0, target}));
    v.require(pd < 1e-9, "protocol block", pd);
    v.require(run.leakage < 1e-9, "protocol leakage", run.leakage);
    v.detail << "ratio closed " << format_complex(f.ratio) << ", diagram " << format_complex(d.ratio)
             << ", offdiag " << off << ", deviation " << dev << ", protocol distance " << pd << ", leakage "
             << run.leakage;
    return v;
}

Verdict criterion6() {
    Verdict v;
    double worst = 0.0;
    for (const char* n : {"ising1", "z3", "toric_code", "ty_z3", "bilayer_ising"}) {
        double r = check_pentagon(cat(n)).max_residual;
        v.require(r < 1e-10, std::string("pentagon ") + n, r);
        worst = std::max(worst, r);
    }
    v.detail << "pentagon max " << worst;
    worst = 0.0;
    for (const char* n : {"ising1", "z3", "bilayer_ising"}) {
        double r = check_hexagon(cat(n)).max_residual;
        v.require(r < 1e-10, std::string("hexagon ") + n, r);
        worst = std::max(worst, r);
    }
    double h = check_heptagon(cat("ty_z3")).max_residual;
    v.require(h < 1e-10, "heptagon ty_z3", h);
    v.detail << ", hexagon max " << worst << ", heptagon ty_z3 " << h;
    return v;
}

Verdict criterion7() {
    Verdict v;
    struct Expect {
        const char* cat;
        const char* label;
        double d;
    };
    const double r2 = std::sqrt(2.0);
    const Expect expect[] = {
        {"ising1", "1", 1.0},           {"ising1", "sigma", r2},          {"ising1", "psi", 1.0},
        {"toric_code", "sigma+", r2},   {"toric_code", "e", 1.0},         {"tc_z2x_restricted", "sigma+", r2},
        {"bilayer_ising", "sigma.sigma", 2.0},
        {"bilayer_ising_z2x_partial", "X1", 2.0},
        {"bilayer_ising_z2x_partial", "Xsigma", 2 * r2},
        {"bilayer_ising_z2x_partial", "Xpsi", 2.0},
    };
    double worst = 0.0;
    for (const auto& e : expect) {
        double diff = std::abs(cat(e.cat).d(cat(e.cat).L(e.label)) - e.d);
        v.require(diff < 1e-9, std::string(e.cat) + " d_" + e.label, diff);
        worst = std::max(worst, diff);
    }
    auto total = [](const SkeletalCategory& c) {
        double s = 0.0;
        for (Label a : c.ring().labels()) s += c.d(a) * c.d(a);
        return s;
    };
    double di = total(cat("ising1")), db = total(cat("bilayer_ising"));
    v.require(std::abs(di - 4.0) < 1e-9, "D^2 ising1", di);
    v.require(std::abs(db - 16.0) < 1e-9, "D^2 bilayer_ising", db);
    v.detail << "max|d - expected| " << worst << ", D^2 ising1 " << di << ", bilayer_ising " << db;
    return v;
}

Verdict criterion8() {
    Verdict v;
    int tc = defect_counts(cat("toric_code").ring()).at(1);
    int z3 = defect_counts(cat("ty_z3").ring()).at(1);
    int bi = defect_counts(cat("bilayer_ising_z2x_partial").ring()).at(1);
    v.require(tc == 2, "toric code", tc);
    v.require(z3 == 1, "Z3", z3);
    v.require(bi == 3, "bilayer Ising", bi);
    v.detail << "toric code " << tc << ", Z3 " << z3 << ", bilayer Ising " << bi;
    return v;
}

Verdict criterion9() {
    Verdict v;
    struct RepCase {
        const char* cat;
        const char* x;
        int n;
        const char* total;
    };
    const RepCase reps[] = {
        {"ising1", "sigma", 4, "1"},          {"ising1", "sigma", 6, "psi"},
        {"z3", "w", 4, "w"},                  {"tc_z2x_restricted", "sigma+", 4, "1"},
        {"ty_z3", "X1", 4, "1"},              {"ty_z3", "X1", 5, "X1"},
        {"bilayer_ising", "sigma.sigma", 4, "1.1"},
        {"bilayer_ising_z2x_partial", "X1", 3, "X1"},
        {"bilayer_ising_z2x_partial", "sigma.1", 4, "1.1"},
    };
    double braid = 0.0, unit = 0.0;
    for (const auto& rc : reps) {
        BraidRep r = rep(cat(rc.cat), rc.x, rc.n, rc.total);
        braid = std::max(braid, check_braid_relations(r));
        for (const Matrix& g : r.generators) unit = std::max(unit, unitarity_defect(g));
    }
    v.require(braid < 1e-9, "braid relations", braid);
    v.require(unit < 1e-9, "generator unitarity", unit);

    std::size_t bad_blocks = 0;
    for (const auto& n : catalog_names()) bad_blocks += verify_unitarity(cat(n)).size();
    v.require(bad_blocks == 0, "F-block unitarity", static_cast<double>(bad_blocks));

    double proj = 0.0;
    for (auto [cn, xn, n, tn] : {RepCase{"ising1", "sigma", 6, "1"}, RepCase{"ty_z3", "X1", 4, "1"},
                                 RepCase{"bilayer_ising", "sigma.sigma", 4, "1.1"}}) {
        const SkeletalCategory& c = cat(cn);
        Label x = c.L(xn);
        TreeBasis b = enumerate_basis(c, std::vector<Label>(static_cast<std::size_t>(n), x), c.L(tn));
        for (int pos = 1; pos < n; ++pos) {
            Matrix sum = Matrix::Zero(b.dimension(), b.dimension());
            for (Label ch : c.ring().channels(x, x)) {
                Matrix p = measurement_projector(c, x, x, ch, b, pos);
                proj = std::max(proj, max_abs_diff(p * p, p));
                sum += p;
            }
            proj = std::max(proj, max_abs_diff(sum, Matrix::Identity(b.dimension(), b.dimension())));
        }
    }
    v.require(proj < 1e-9, "projector idempotence and completeness", proj);

    double conf = 0.0;
    int files = 0;
    for (const auto& e : std::filesystem::directory_iterator(kCorpus)) {
        if (e.path().extension() != ".dsl") continue;
        Diagram d = parse_diagram(read(e.path()));
        if (d.meta.count("kind") && d.meta.at("kind") == "protocol") continue;
        const SkeletalCategory& c = cat(d.meta.at("cat"));
        EvalOptions o;
        if (d.meta.count("total")) o.total = c.L(d.meta.at("total"));
        EvalResult a = evaluate(d, c, o);
        o.strategy = Strategy::PentagonDetour;
        EvalResult b = evaluate(d, c, o);
        conf = std::max(conf, a.closed ? std::abs(a.scalar - b.scalar) : max_abs_diff(a.matrix, b.matrix));
        ++files;
    }
    v.require(files >= 20, "corpus size", files);
    v.require(conf < 1e-9, "confluence", conf);
    v.detail << "braid " << braid << ", unitarity " << unit << ", projectors " << proj << ", confluence " << conf
             << " over " << files << " diagrams";
    return v;
}

Verdict criterion10() {
    Verdict v;
    const SkeletalCategory& ty = cat("ty_z3");
    Label X = ty.L("X1");
    std::vector<RKey> keys;
    for (Label a : ty.ring().channels(X, X)) keys.push_back({X.id, X.id, a.id});

    // exhaustive grid over 24th roots of unity first
    double best = 1e9;
    std::vector<std::array<Complex, 3>> optima;
    for (int p = 0; p < 24; ++p)
        for (int q = 0; q < 24; ++q)
            for (int s = 0; s < 24; ++s) {
                PhaseAnsatz g;
                g.unknowns = keys;
                g.values = {ei(kPi * p / 12), ei(kPi * q / 12), ei(kPi * s / 12)};
                double r = check_heptagon(apply_ansatz(ty, g)).max_residual;
                if (r < 1e-9) optima.push_back({g.values[0], g.values[1], g.values[2]});
                best = std::min(best, r);
            }
    v.require(best < 1e-10, "grid optimum", best);

    // the descent must land on one of the grid optima
    PhaseAnsatz fit = solve_defect_R(ty, keys);
    v.require(fit.residual < 1e-6, "solver residual", fit.residual);
    double dev = 1e9;
    for (const auto& o : optima) {
        double d = 0.0;
        for (int j = 0; j < 3; ++j) d = std::max(d, std::abs(fit.values[j] - o[j]));
        dev = std::min(dev, d);
    }
    v.require(dev < 1e-6, "solver against grid optimum", dev);
    qutrit_checks(apply_ansatz(ty, fit), v);
    v.detail << "; grid best " << best << " with " << optima.size() << " optima, solver residual " << fit.residual
             << ", distance to grid optimum " << dev;
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<Verdict()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                             criterion5, criterion6, criterion7, criterion8,
                                                             criterion9, criterion10};
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
    if (selected.empty())
        for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) selected.push_back(i);

    int failures = 0;
    for (int n : selected) {
        if (n < 1 || n > static_cast<int>(criteria.size())) {
            std::cerr << "no criterion " << n << "\n";
            return 64;
        }
        Verdict v;
        try {
            v = criteria[static_cast<std::size_t>(n - 1)]();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail << "threw: " << e.what();
        }
        std::cout << "criterion " << n << ": " << (v.pass ? "PASS" : "FAIL") << " " << v.detail.str() << "\n";
        failures += v.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
