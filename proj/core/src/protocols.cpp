#include "gxcalc/protocols.hpp"

#include <cmath>
#include <map>

#include "gxcalc/error.hpp"

namespace gxcalc {

namespace {

struct Names {
    Label anyon, psi, vacuum, defect;
};

Names resolve(const SkeletalCategory& c, const TGateLabels& n) {
    const FusionRing& r = c.ring();
    return {r.find(n.anyon), r.find(n.psi), r.find(n.vacuum), r.find(n.defect)};
}

// Single entry of a diagram whose source and target bases are 1-dimensional.
Complex entry(const SkeletalCategory& c, const std::string& text, Label total, const EvalOptions& base = {}) {
    EvalOptions o = base;
    o.total = total;
    EvalResult res = evaluate(parse_diagram(text), c, o);
    if (res.matrix.rows() != 1 || res.matrix.cols() != 1)
        throw Error(ErrorKind::InvalidData, "expected a 1x1 evaluation for:\n" + text);
    return res.matrix(0, 0);
}

// [F]_{e,f} read off the recoupling of Hom(x, x^3) at the second pair.
Complex f_entry(const SkeletalCategory& c, Label x, Label e, Label f) {
    TreeBasis b = enumerate_basis(c, {x, x, x}, x);
    Recoupling rc = recouple_keyed(c, b, 2);
    int col = b.find({c.ring().unit(), x, e, x});
    for (std::size_t k = 0; k < rc.keys.size(); ++k)
        if (rc.keys[k].f == f && col >= 0) return rc.m(static_cast<Eigen::Index>(k), col);
    return 0.0;
}

void finish(ProtocolResult& res, const Tolerance& tol = {}) {
    res.t11 = 0.0;
    res.tpsipsi = 0.0;
    for (const auto& t : res.terms) {
        res.t11 += t.one;
        res.tpsipsi += t.psi;
    }
    res.t11 *= res.scale;
    res.tpsipsi *= res.scale;
    res.ratio = std::abs(res.t11) > tol.eq_tol ? res.tpsipsi / res.t11 : Complex(0.0);
}

}  // namespace

ProtocolResult tgate_closed_form(const SkeletalCategory& c, const TGateLabels& names) {
    Names L = resolve(c, names);
    ProtocolResult res;
    res.method = TGateMethod::ClosedForm;
    res.scale = c.d(L.anyon) * c.d(L.defect) * c.d(L.defect);
    for (Label ch : c.ring().channels(L.defect, L.defect)) {
        Complex R = c.r(L.defect, L.defect, ch);
        double F2 = std::norm(c.f(L.defect, L.defect, L.defect, L.defect, ch, L.vacuum));
        Complex s_anyon = c.s(L.anyon, ch) / c.s(L.vacuum, ch);
        Complex s_psi = c.s(L.psi, ch) / c.s(L.vacuum, ch);
        res.terms.push_back({ch, R * R * F2 * s_anyon * s_anyon, R * R * F2 * (1.0 - s_psi), {}});
    }
    finish(res);
    // the two through strands on the left carry different charges
    res.offdiag_max = 0.0;
    return res;
}

ProtocolResult tgate_diagrammatic(const SkeletalCategory& c, const TGateOptions& opts) {
    if (!(c.trivial_u_eta || opts.assume_trivial_u_eta))
        throw Error(ErrorKind::UnsupportedConfiguration, "the T-gate diagrams are evaluated only with U = eta = 1");
    const FusionRing& r = c.ring();
    Names L = resolve(c, opts.names);
    EvalOptions eo;
    eo.assume_trivial_u_eta = true;
    const std::string a = opts.names.anyon;
    const std::string X = opts.names.defect;
    const std::string p = opts.names.psi;

    ProtocolResult res;
    res.method = TGateMethod::Diagrammatic;
    // common scale is kept inside the per-channel products
    res.scale = 1.0;
    Complex sigma_loop = entry(c, "strands 0\nloop " + a + " 0 0\n", r.unit(), eo);
    Complex f11 = f_entry(c, L.anyon, L.vacuum, L.vacuum);
    Complex fp1 = f_entry(c, L.anyon, L.psi, L.vacuum);
    Complex fpp = f_entry(c, L.anyon, L.psi, L.psi);
    std::string anyon_pair = "strands 1 : " + p + "\nsplit 1 " + a + " " + a + " " + p + "\nfuse 1 " + a + " " + a + " " + p + "\n";
    Complex anyon_bubble = entry(c, anyon_pair, L.psi, eo);

    for (Label ch : r.channels(L.defect, L.defect)) {
        std::string cn = r.name(ch);
        // Step 1: unbraid the two middle defects
        Complex braid = entry(c, "strands 2 : " + X + " " + X + "\nbraid- 1\nbraid- 1\n", ch, eo);
        Complex pair_bubble =
            entry(c, "strands 1 : " + cn + "\nsplit 1 " + X + " " + X + " " + cn + "\nfuse 1 " + X + " " + X + " " + cn + "\n", ch, eo);
        Complex step1 = braid / pair_bubble;
        // Step 2: the anyon loop slides across the defect line
        Complex step2 = u_slide(c, r.grade(L.defect), L.anyon, L.anyon, L.vacuum, true) *
                        eta_slide(c, L.anyon, r.grade(L.defect), r.grade(L.defect), true);
        // Step 3: two anyon loops around the channel line
        Complex step3 = entry(c, "strands 1 : " + cn + "\nloop " + a + " 1 1\nloop " + a + " 1 1\n", ch, eo);
        // Step 4: recouple the defect quartet, pop the two bubbles
        Complex fdef = f_entry(c, L.defect, ch, L.vacuum);
        Complex step4 = std::norm(fdef) * pair_bubble * pair_bubble;
        // Step 5: theta graph and one free anyon loop
        Complex theta_graph = entry(c,
                                    "strands 0\ncup 1 " + cn + "\nsplit 1 " + X + " " + X + " " + cn + "\nfuse 1 " + X + " " + X +
                                        " " + cn + "\ncap 1 " + cn + "\n",
                                    r.unit(), eo);
        Complex step5 = theta_graph * sigma_loop;
        Complex one = step1 * step2 * step3 * step4 * step5;

        // psi path: F-move on the anyon line splits into d = vacuum and d = psi
        Complex psi_loop = entry(c, "strands 1 : " + cn + "\nloop " + p + " 1 1\n", ch, eo);
        Complex inner = f11 * sigma_loop * sigma_loop * theta_graph +
                        psi_loop * fp1 * fpp * anyon_bubble * anyon_bubble * sigma_loop * theta_graph;
        Complex psi = step1 * step2 * std::norm(fdef) * pair_bubble * pair_bubble * inner;
        res.terms.push_back({ch, one, psi, {step1, step2, step3, step4, step5}});
    }
    finish(res);

    // off-diagonal: the leftmost pair is a through line with charge 1 on one
    // side and psi on the other
    TreeBasis four = enumerate_basis(c, {L.anyon, L.anyon, L.anyon, L.anyon}, r.unit());
    Matrix mix = measurement_projector(c, L.anyon, L.anyon, L.psi, four, 1) *
                 measurement_projector(c, L.anyon, L.anyon, L.vacuum, four, 1);
    res.offdiag_max = mix.size() ? mix.cwiseAbs().maxCoeff() * std::abs(res.t11) : 0.0;
    return res;
}

namespace {

enum class Role { Anyon, Outer, Middle };

struct Lowering {
    const SkeletalCategory& c;
    std::vector<int> pos;  // position -> strand id
    Diagram eff;
    std::vector<bool> exchanges;  // tokens of middle-pair exchanges
    int start_proj = 0;
    int end_proj = 0;

    static Role role(int id) {
        if (id < 4) return Role::Anyon;
        return (id == 4 || id == 7) ? Role::Outer : Role::Middle;
    }

    [[noreturn]] static void unsupported(const DiagramOp& op, const std::string& why) {
        throw Error(ErrorKind::UnsupportedConfiguration, "line " + std::to_string(op.line) + ": " + why);
    }

    // effective strand order: anyons and the middle pair as one strand (id 8)
    std::vector<int> order() const {
        std::vector<int> out;
        bool seen_mid = false;
        for (int id : pos) {
            Role ro = role(id);
            if (ro == Role::Anyon) out.push_back(id);
            if (ro == Role::Middle && !seen_mid) {
                out.push_back(8);
                seen_mid = true;
            }
        }
        return out;
    }

    int eff_pos(int id) const {
        auto o = order();
        for (std::size_t k = 0; k < o.size(); ++k)
            if (o[k] == id) return static_cast<int>(k) + 1;
        return -1;
    }
};

}  // namespace

ProtocolRun run_protocol(const Diagram& script, const SkeletalCategory& c) {
    const FusionRing& r = c.ring();
    TypedDiagram td = typecheck(script, c);
    if (td.source.size() != 8) throw Error(ErrorKind::UnsupportedConfiguration, "protocol scripts act on 4 anyons and 4 defects");
    Label A = td.source[0];
    Label X = td.source[4];
    for (int k = 0; k < 8; ++k) {
        bool ok = k < 4 ? (td.source[k] == A && r.grade(A) == 0) : (td.source[k] == X && r.grade(X) != 0);
        if (!ok) throw Error(ErrorKind::UnsupportedConfiguration, "protocol scripts act on 4 equal anyons then 4 equal defects");
    }
    Lowering lw{c, {0, 1, 2, 3, 4, 5, 6, 7}, {}, {}, 0, 0};
    lw.eff.meta = script.meta;

    struct Half {
        int anyon = -1;
        int defect = -1;
        bool positive = true;
        int eff_at = 0;
        std::size_t op_index = 0;
    };
    Half half;
    bool pending = false;
    std::map<int, std::pair<int, bool>> outer;  // anyon -> (outer defect, anyon passes under)
    int phase = 0;                              // 0 start, 1 body, 2 end

    for (std::size_t k = 0; k < td.ops.size(); ++k) {
        const DiagramOp& op = td.ops[k].op;
        if (pending && half.op_index + 1 != k) Lowering::unsupported(op, "split crossing of the middle defect pair");
        if (op.kind == OpKind::Project) {
            int p = lw.pos[op.i - 1];
            int q = lw.pos[op.i];
            Role rp = Lowering::role(p), rq = Lowering::role(q);
            if (rp != Role::Anyon && rq != Role::Anyon) {
                bool pair = (p == 4 && q == 5) || (p == 6 && q == 7);
                if (!pair || td.ops[k].labels[2] != r.unit())
                    Lowering::unsupported(op, "defect projections must return an outer pair to the vacuum");
                if (phase == 0) {
                    ++lw.start_proj;
                } else {
                    phase = 2;
                    ++lw.end_proj;
                }
                continue;
            }
            if (rp != Role::Anyon || rq != Role::Anyon) Lowering::unsupported(op, "projection mixing anyons and defects");
            if (phase == 2) Lowering::unsupported(op, "anyon projection after the defects are annihilated");
            phase = 1;
            DiagramOp e = op;
            e.i = lw.eff_pos(p);
            lw.eff.ops.push_back(e);
            continue;
        }
        if (phase == 2) Lowering::unsupported(op, "only defect projections may follow the final annihilation");
        phase = 1;
        if (op.kind == OpKind::Twist) {
            int p = lw.pos[op.i - 1];
            if (Lowering::role(p) != Role::Anyon) Lowering::unsupported(op, "twist on a defect");
            DiagramOp e = op;
            e.i = lw.eff_pos(p);
            lw.eff.ops.push_back(e);
            continue;
        }
        if (op.kind != OpKind::BraidPos && op.kind != OpKind::BraidNeg)
            Lowering::unsupported(op, "protocol scripts contain braids, twists and projections only");
        bool positive = op.kind == OpKind::BraidPos;
        int p = lw.pos[op.i - 1];
        int q = lw.pos[op.i];
        Role rp = Lowering::role(p), rq = Lowering::role(q);
        if (rp == Role::Anyon && rq == Role::Anyon) {
            DiagramOp e = op;
            e.i = lw.eff_pos(p);
            lw.eff.ops.push_back(e);
        } else if ((rp == Role::Anyon) != (rq == Role::Anyon) && (rp == Role::Middle || rq == Role::Middle)) {
            int anyon = rp == Role::Anyon ? p : q;
            int defect = rp == Role::Anyon ? q : p;
            if (!pending) {
                int at = rp == Role::Anyon ? lw.eff_pos(anyon) : lw.eff_pos(8);
                half = Half{anyon, defect, positive, at, k};
                pending = true;
            } else {
                if (half.anyon != anyon || half.defect == defect || half.positive != positive)
                    Lowering::unsupported(op, "the two crossings with the middle pair must match");
                DiagramOp e = op;
                e.i = half.eff_at;
                lw.eff.ops.push_back(e);
                pending = false;
            }
        } else if ((rp == Role::Anyon) != (rq == Role::Anyon) && (rp == Role::Outer || rq == Role::Outer)) {
            int anyon = rp == Role::Anyon ? p : q;
            int defect = rp == Role::Anyon ? q : p;
            Crossing x = generator_crossing(c.orientation, positive);
            bool under = (rp == Role::Anyon) == (x == Crossing::Under);
            auto it = outer.find(anyon);
            if (it == outer.end()) {
                outer[anyon] = {defect, under};
            } else if (it->second.first == defect && it->second.second == under) {
                outer.erase(it);
            } else {
                Lowering::unsupported(op, "crossings with an outer defect must undo each other");
            }
        } else if (rp == Role::Middle && rq == Role::Middle) {
            lw.exchanges.push_back(positive);
        } else {
            Lowering::unsupported(op, "crossing between outer and middle defects");
        }
        std::swap(lw.pos[op.i - 1], lw.pos[op.i]);
    }
    if (pending) throw Error(ErrorKind::UnsupportedConfiguration, "unfinished crossing of the middle defect pair");
    if (!outer.empty()) throw Error(ErrorKind::UnsupportedConfiguration, "anyon left behind an outer defect");
    for (int k = 0; k < 8; ++k)
        if (lw.pos[k] != k && !(Lowering::role(lw.pos[k]) == Role::Middle && Lowering::role(k) == Role::Middle))
            throw Error(ErrorKind::UnsupportedConfiguration, "strands do not return to their initial order");

    ProtocolRun run;
    run.defect_exchanges = static_cast<int>(lw.exchanges.size());
    TreeBasis four = enumerate_basis(c, {A, A, A, A}, r.unit());
    int nx = four.dimension();
    std::vector<Label> ys = r.channels(X, X);
    run.pair_channels = ys;
    int ny = static_cast<int>(ys.size());
    int vac = -1;
    for (int k = 0; k < ny; ++k)
        if (ys[k] == r.unit()) vac = k;
    if (vac < 0) throw Error(ErrorKind::InvalidData, "defect pair cannot annihilate");

    run.physical = Matrix::Zero(ny * nx, ny * nx);
    std::vector<double> total_mass(nx, 0.0);
    for (Label ch : ys) {
        Diagram d = lw.eff;
        d.strands = std::vector<std::string>{r.name(A), r.name(A), r.name(A), r.name(A), r.name(ch)};
        EvalOptions o;
        o.total = ch;
        EvalResult er = evaluate(d, c, o);
        Complex scalar = 1.0;
        for (bool tok : lw.exchanges) scalar *= crossing_factor(c, X, X, ch, tok);
        Matrix E = er.matrix * scalar;
        std::vector<int> idx(nx, -1);
        for (int t = 0; t < nx; ++t) {
            std::vector<Label> path = four.trees()[t].path(r.unit());
            path.push_back(ch);
            idx[t] = er.source.find(path);
        }
        Complex f_vac = c.f(X, X, X, X, r.unit(), ch);
        for (int x = 0; x < nx; ++x)
            if (idx[x] >= 0) total_mass[x] += std::norm(f_vac) * E.col(idx[x]).squaredNorm();
        for (int y = 0; y < ny; ++y)
            for (int yp = 0; yp < ny; ++yp) {
                Complex w = std::conj(c.f(X, X, X, X, ys[yp], ch)) * c.f(X, X, X, X, ys[y], ch);
                if (w == 0.0) continue;
                for (int x = 0; x < nx; ++x)
                    for (int xp = 0; xp < nx; ++xp)
                        if (idx[x] >= 0 && idx[xp] >= 0) run.physical(yp * nx + xp, y * nx + x) += w * E(idx[xp], idx[x]);
            }
    }
    run.logical = run.physical.block(vac * nx, vac * nx, nx, nx);
    double pre = 0.0;
    for (int x = 0; x < nx; ++x) {
        double kept = run.logical.col(x).squaredNorm();
        if (total_mass[x] > 0.0) pre = std::max(pre, 1.0 - kept / total_mass[x]);
    }
    run.pre_annihilation_leakage = std::max(pre, 0.0);
    // after both outer pairs are projected to the vacuum every surviving
    // state has anyon total 1 and lies in the logical span
    double post = 0.0;
    for (int x = 0; x < nx; ++x) {
        double kept = run.logical.col(x).squaredNorm();
        double in_vac_sector = 0.0;
        for (int xp = 0; xp < nx; ++xp) in_vac_sector += std::norm(run.physical(vac * nx + xp, vac * nx + x));
        if (in_vac_sector > 0.0) post = std::max(post, 1.0 - kept / in_vac_sector);
    }
    run.leakage = lw.end_proj > 0 ? std::max(post, 0.0) : run.pre_annihilation_leakage;
    run.normalized = std::abs(run.logical(0, 0)) > 1e-12 ? Matrix(run.logical / run.logical(0, 0)) : run.logical;
    run.lowered = lw.eff;
    run.lowered.strands = std::vector<std::string>{r.name(A), r.name(A), r.name(A), r.name(A), "c"};
    return run;
}

}  // namespace gxcalc
