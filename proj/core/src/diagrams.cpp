#include "gxcalc/diagrams.hpp"

#include <cctype>
#include <cmath>
#include <set>
#include <sstream>

#include "gxcalc/error.hpp"

namespace gxcalc {

namespace {

struct Token {
    std::string text;
    int col = 0;
};

std::vector<Token> tokenize(const std::string& s, int col0) {
    std::vector<Token> out;
    std::size_t k = 0;
    while (k < s.size()) {
        while (k < s.size() && std::isspace(static_cast<unsigned char>(s[k]))) ++k;
        if (k >= s.size()) break;
        std::size_t b = k;
        while (k < s.size() && !std::isspace(static_cast<unsigned char>(s[k]))) ++k;
        out.push_back({s.substr(b, k - b), col0 + static_cast<int>(b)});
    }
    return out;
}

bool parse_index(const Token& t, int& out) {
    if (t.text.empty() || t.text.find_first_not_of("0123456789") != std::string::npos) return false;
    out = std::stoi(t.text);
    return true;
}

void parse_statement(const std::vector<Token>& t, int line, int end_col, Diagram& d) {
    const std::string& kw = t[0].text;
    std::size_t pos = 1;
    auto need = [&](const char* what) -> const Token& {
        if (pos >= t.size()) throw SyntaxError(line, end_col, what);
        return t[pos++];
    };
    auto index = [&]() {
        const Token& tok = need("a strand index");
        int v = 0;
        if (!parse_index(tok, v)) throw SyntaxError(line, tok.col, "a strand index");
        return v;
    };
    auto label = [&]() { return need("a label").text; };

    if (kw == "strands") {
        if (d.strands) throw SyntaxError(line, t[0].col, "a single strands header");
        if (!d.ops.empty()) throw SyntaxError(line, t[0].col, "the strands header before any primitive");
        const Token& nt = need("a strand count");
        std::string count = nt.text;
        bool colon_attached = !count.empty() && count.back() == ':';
        if (colon_attached) count.pop_back();
        int n = 0;
        if (!parse_index({count, nt.col}, n)) throw SyntaxError(line, nt.col, "a strand count");
        if (!colon_attached) {
            if (pos < t.size() && t[pos].text == ":") {
                ++pos;
            } else if (n > 0) {
                throw SyntaxError(line, pos < t.size() ? t[pos].col : end_col, "':'");
            }
        }
        std::vector<std::string> names;
        while (pos < t.size()) names.push_back(t[pos++].text);
        if (static_cast<int>(names.size()) != n)
            throw SyntaxError(line, end_col, std::to_string(n) + " strand labels");
        d.strands = names;
        return;
    }
    DiagramOp op;
    op.line = line;
    op.col = t[0].col;
    if (kw == "braid+" || kw == "braid-" || kw == "twist") {
        op.kind = kw == "braid+" ? OpKind::BraidPos : kw == "braid-" ? OpKind::BraidNeg : OpKind::Twist;
        op.i = index();
    } else if (kw == "cup" || kw == "cap") {
        op.kind = kw == "cup" ? OpKind::Cup : OpKind::Cap;
        op.i = index();
        op.names = {label()};
    } else if (kw == "loop") {
        op.kind = OpKind::Loop;
        op.names = {label()};
        op.i = index();
        op.j = index();
    } else if (kw == "split" || kw == "fuse" || kw == "project") {
        op.kind = kw == "split" ? OpKind::Split : kw == "fuse" ? OpKind::Fuse : OpKind::Project;
        op.i = index();
        op.names = {label(), label(), label()};
    } else {
        throw SyntaxError(line, t[0].col, "a primitive (strands, braid+, braid-, cup, cap, loop, twist, split, fuse, project)");
    }
    if (pos < t.size()) throw SyntaxError(line, t[pos].col, "end of statement");
    d.ops.push_back(std::move(op));
}

}  // namespace

Diagram parse_diagram(std::string_view text) {
    Diagram d;
    std::istringstream in{std::string(text)};
    int line = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++line;
        auto hash = raw.find('#');
        if (hash != std::string::npos) {
            std::string comment = raw.substr(hash + 1);
            auto colon = comment.find(':');
            if (raw.find_first_not_of(" \t") == hash && colon != std::string::npos) {
                auto key = tokenize(comment.substr(0, colon), 0);
                auto val = comment.substr(colon + 1);
                auto b = val.find_first_not_of(" \t");
                auto e = val.find_last_not_of(" \t\r");
                if (key.size() == 1 && b != std::string::npos) d.meta[key[0].text] = val.substr(b, e - b + 1);
            }
            raw = raw.substr(0, hash);
        }
        std::size_t start = 0;
        while (start <= raw.size()) {
            auto semi = raw.find(';', start);
            std::string stmt = raw.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
            auto toks = tokenize(stmt, static_cast<int>(start) + 1);
            if (!toks.empty()) parse_statement(toks, line, static_cast<int>(start + stmt.size()) + 1, d);
            if (semi == std::string::npos) break;
            start = semi + 1;
        }
    }
    return d;
}

std::string emit_diagram(const Diagram& d) {
    std::ostringstream out;
    for (const auto& [k, v] : d.meta) out << "# " << k << ": " << v << "\n";
    if (d.strands) {
        out << "strands " << d.strands->size() << " :";
        for (const auto& s : *d.strands) out << " " << s;
        out << "\n";
    }
    for (const auto& op : d.ops) {
        switch (op.kind) {
            case OpKind::BraidPos: out << "braid+ " << op.i; break;
            case OpKind::BraidNeg: out << "braid- " << op.i; break;
            case OpKind::Twist: out << "twist " << op.i; break;
            case OpKind::Cup: out << "cup " << op.i << " " << op.names[0]; break;
            case OpKind::Cap: out << "cap " << op.i << " " << op.names[0]; break;
            case OpKind::Loop: out << "loop " << op.names[0] << " " << op.i << " " << op.j; break;
            case OpKind::Split: out << "split " << op.i; break;
            case OpKind::Fuse: out << "fuse " << op.i; break;
            case OpKind::Project: out << "project " << op.i; break;
        }
        if (op.kind == OpKind::Split || op.kind == OpKind::Fuse || op.kind == OpKind::Project)
            for (const auto& n : op.names) out << " " << n;
        out << "\n";
    }
    return out.str();
}

TypedDiagram typecheck(const Diagram& d, const SkeletalCategory& c) {
    const FusionRing& r = c.ring();
    if (!d.strands) throw SyntaxError(1, 1, "a strands header");
    TypedDiagram td;
    for (const auto& n : *d.strands) td.source.push_back(r.find(n));
    std::vector<Label> cur = td.source;
    auto nm = [&](Label a) { return r.name(a); };
    for (const auto& op : d.ops) {
        TypedOp t{op, {}, cur, {}};
        for (const auto& n : op.names) t.labels.push_back(r.find(n));
        int n = static_cast<int>(cur.size());
        auto need_pair = [&]() {
            if (op.i < 1 || op.i + 1 > n)
                throw SyntaxError(op.line, op.col, "two strands at positions " + std::to_string(op.i) + "," + std::to_string(op.i + 1) +
                                                       " (have " + std::to_string(n) + ")");
        };
        auto need_one = [&]() {
            if (op.i < 1 || op.i > n) throw SyntaxError(op.line, op.col, "a strand at position " + std::to_string(op.i));
        };
        auto vertex = [&](Label a, Label b, Label x) {
            if (r.N(a, b, x) == 0)
                throw Error(ErrorKind::AdmissibilityError,
                            "line " + std::to_string(op.line) + ": vertex " + nm(a) + " x " + nm(b) + " -> " + nm(x) + " is not admissible");
        };
        auto expect = [&](int pos, Label want) {
            if (cur[pos - 1] != want)
                throw Error(ErrorKind::SectorError, "line " + std::to_string(op.line) + ": strand " + std::to_string(pos) +
                                                        " carries " + nm(cur[pos - 1]) + ", not " + nm(want));
        };
        switch (op.kind) {
            case OpKind::BraidPos:
            case OpKind::BraidNeg: {
                need_pair();
                Label A = cur[op.i - 1];
                Label B = cur[op.i];
                Crossing x = generator_crossing(c.orientation, op.kind == OpKind::BraidPos);
                auto [Ap, Bp] = crossing_labels(c, A, B, x);
                if (r.grade(A) != 0 && r.grade(B) != 0 && (Ap != B || Bp != A))
                    throw Error(ErrorKind::SectorError, "line " + std::to_string(op.line) + ": crossing defects " + nm(A) + ", " +
                                                            nm(B) + " would relabel them to " + nm(Ap) + ", " + nm(Bp));
                cur[op.i - 1] = Ap;
                cur[op.i] = Bp;
                break;
            }
            case OpKind::Twist:
                need_one();
                break;
            case OpKind::Cup: {
                if (op.i < 1 || op.i > n + 1) throw SyntaxError(op.line, op.col, "a cup position in 1.." + std::to_string(n + 1));
                Label a = t.labels[0];
                cur.insert(cur.begin() + (op.i - 1), {a, r.dual(a)});
                break;
            }
            case OpKind::Cap: {
                need_pair();
                Label a = t.labels[0];
                expect(op.i, a);
                expect(op.i + 1, r.dual(a));
                cur.erase(cur.begin() + (op.i - 1), cur.begin() + (op.i + 1));
                break;
            }
            case OpKind::Loop: {
                if (r.grade(t.labels[0]) != 0)
                    throw Error(ErrorKind::SectorError, "line " + std::to_string(op.line) + ": loop label must be an anyon");
                bool empty = op.i == 0 && op.j == 0;
                if (!empty && (op.i < 1 || op.j < op.i || op.j > n))
                    throw SyntaxError(op.line, op.col, "a loop range i <= j within 1.." + std::to_string(n));
                break;
            }
            case OpKind::Split: {
                need_one();
                expect(op.i, t.labels[2]);
                vertex(t.labels[0], t.labels[1], t.labels[2]);
                cur[op.i - 1] = t.labels[0];
                cur.insert(cur.begin() + op.i, t.labels[1]);
                break;
            }
            case OpKind::Fuse:
            case OpKind::Project: {
                need_pair();
                expect(op.i, t.labels[0]);
                expect(op.i + 1, t.labels[1]);
                vertex(t.labels[0], t.labels[1], t.labels[2]);
                if (op.kind == OpKind::Fuse) {
                    cur[op.i - 1] = t.labels[2];
                    cur.erase(cur.begin() + op.i);
                }
                break;
            }
        }
        t.after = cur;
        td.ops.push_back(std::move(t));
    }
    td.target = cur;
    return td;
}

Complex crossing_factor(const SkeletalCategory& c, Label a, Label b, Label ch, bool positive) {
    return crossing_coefficient(c, a, b, ch, generator_crossing(c.orientation, positive));
}

Complex loop_factor(const SkeletalCategory& c, Label loop, Label inside) {
    if (inside == c.ring().unit() && !c.has_S()) return c.d(loop);
    return c.s(loop, inside) / c.s(c.ring().unit(), inside);
}

double bubble(const SkeletalCategory& c, Label a, Label b, Label ch) {
    if (c.ring().N(a, b, ch) == 0) return 0.0;
    return std::sqrt(c.d(a) * c.d(b) / c.d(ch));
}

Complex u_slide(const SkeletalCategory& c, int g, Label a, Label b, Label ch, bool assume_trivial) {
    if (assume_trivial) return 1.0;
    return c.u(g, a, b, ch);
}

Complex eta_slide(const SkeletalCategory& c, Label x, int g, int h, bool assume_trivial) {
    if (assume_trivial) return 1.0;
    return c.eta_of(x, g, h);
}

namespace {

// Amplitude of each in-tree on the out-tree where the pair at pos of the
// in-leaves is fused to ch. Unitary on its support.
Matrix pair_fuse(const SkeletalCategory& c, const TreeBasis& in, const TreeBasis& out, int pos, Label ch, Strategy s) {
    Label unit = c.ring().unit();
    Matrix m = Matrix::Zero(out.dimension(), in.dimension());
    for (int t = 0; t < in.dimension(); ++t)
        for (auto& [k, v] : decompose_pair(c, in.leaves(), in.trees()[t].path(unit), pos, s)) {
            if (k.f != ch) continue;
            int o = out.find(k.path);
            if (o >= 0) m(o, t) += v;
        }
    return m;
}

// Pair (pos, pos+1) of `paired` fused to the unit, against `bare` where
// the pair is absent.
Matrix pair_annihilate(const SkeletalCategory& c, const TreeBasis& paired, const TreeBasis& bare, int pos, Strategy s) {
    Label unit = c.ring().unit();
    Matrix m = Matrix::Zero(bare.dimension(), paired.dimension());
    for (int t = 0; t < paired.dimension(); ++t)
        for (auto& [k, v] : decompose_pair(c, paired.leaves(), paired.trees()[t].path(unit), pos, s)) {
            if (k.f != unit) continue;
            // the unit leaf repeats the previous edge
            std::vector<Label> p = k.path;
            p.erase(p.begin() + pos);
            int o = bare.find(p);
            if (o >= 0) m(o, t) += v;
        }
    return m;
}

struct Evaluator {
    const SkeletalCategory& c;
    const EvalOptions& opts;
    std::set<std::string> consumed;

    void note(const char* what, int pos = 1) {
        consumed.insert(what);
        if (pos >= 2) consumed.insert("F");
    }

    TreeBasis basis(const std::vector<Label>& leaves, Label root) const { return enumerate_basis(c, leaves, root); }

    Matrix loop(const TypedOp& t, const TreeBasis& cur) {
        Label l = t.labels[0];
        int n = cur.dimension();
        if (t.op.i == 0) {
            note("S");
            return Matrix::Identity(n, n) * loop_factor(c, l, c.ring().unit());
        }
        const FusionRing& r = c.ring();
        bool defects = false;
        for (int k = t.op.i; k <= t.op.j; ++k) defects |= r.grade(cur.leaves()[k - 1]) != 0;
        if (defects && !(c.trivial_u_eta || opts.assume_trivial_u_eta))
            throw Error(ErrorKind::UnsupportedConfiguration,
                        "line " + std::to_string(t.op.line) + ": loop around defect strands needs U = eta = 1");
        if (defects) consumed.insert("U=eta=1");
        struct Block {
            TreeBasis b;
            Matrix v;
        };
        std::vector<Block> blocks{{cur, Matrix::Identity(n, n)}};
        for (int step = t.op.i; step < t.op.j; ++step) {
            std::vector<Block> next;
            for (auto& blk : blocks) {
                const auto& lv = blk.b.leaves();
                for (Label f : r.channels(lv[t.op.i - 1], lv[t.op.i])) {
                    std::vector<Label> nl = lv;
                    nl[t.op.i - 1] = f;
                    nl.erase(nl.begin() + t.op.i);
                    TreeBasis nb = basis(nl, cur.root());
                    if (nb.dimension() == 0) continue;
                    Matrix v = pair_fuse(c, blk.b, nb, t.op.i, f, opts.strategy) * blk.v;
                    next.push_back({std::move(nb), std::move(v)});
                }
            }
            blocks = std::move(next);
            note("S", t.op.i);
        }
        note("S");
        Matrix out = Matrix::Zero(n, n);
        for (auto& blk : blocks) {
            Label inside = blk.b.leaves()[t.op.i - 1];
            if (r.grade(inside) != 0)
                throw Error(ErrorKind::UnsupportedConfiguration,
                            "line " + std::to_string(t.op.line) + ": loop encloses net defect charge " + r.name(inside));
            out += blk.v.adjoint() * loop_factor(c, l, inside) * blk.v;
        }
        return out;
    }

    // Returns the op matrix and replaces cur by the basis above the op.
    Matrix apply(const TypedOp& t, TreeBasis& cur) {
        const FusionRing& r = c.ring();
        int i = t.op.i;
        Label root = cur.root();
        switch (t.op.kind) {
            case OpKind::BraidPos:
            case OpKind::BraidNeg: {
                note("R", i);
                Crossing x = generator_crossing(c.orientation, t.op.kind == OpKind::BraidPos);
                CrossingOp op = crossing_operator(c, cur, i, x, opts.strategy);
                cur = std::move(op.out);
                return op.m;
            }
            case OpKind::Twist: {
                note("theta");
                int n = cur.dimension();
                return Matrix::Identity(n, n) * c.theta(cur.leaves()[i - 1]);
            }
            case OpKind::Cup: {
                note("F", i);
                Label a = t.labels[0];
                TreeBasis out = basis(t.after, root);
                Matrix m = pair_annihilate(c, out, cur, i, opts.strategy).adjoint() * std::sqrt(c.d(a));
                cur = std::move(out);
                return m;
            }
            case OpKind::Cap: {
                note("F", i);
                Label a = t.labels[0];
                TreeBasis out = basis(t.after, root);
                Matrix m = pair_annihilate(c, cur, out, i, opts.strategy) * std::sqrt(c.d(a));
                cur = std::move(out);
                return m;
            }
            case OpKind::Loop:
                return loop(t, cur);
            case OpKind::Split: {
                note("F", i);
                TreeBasis out = basis(t.after, root);
                double v = std::pow(c.d(t.labels[0]) * c.d(t.labels[1]) / c.d(t.labels[2]), 0.25);
                Matrix m = pair_fuse(c, out, cur, i, t.labels[2], opts.strategy).adjoint() * v;
                cur = std::move(out);
                return m;
            }
            case OpKind::Fuse: {
                note("F", i);
                TreeBasis out = basis(t.after, root);
                double v = std::pow(c.d(t.labels[0]) * c.d(t.labels[1]) / c.d(t.labels[2]), 0.25);
                Matrix m = pair_fuse(c, cur, out, i, t.labels[2], opts.strategy) * v;
                cur = std::move(out);
                return m;
            }
            case OpKind::Project: {
                note("F", i);
                (void)r;
                return measurement_projector(c, t.labels[0], t.labels[1], t.labels[2], cur, i);
            }
        }
        return {};
    }

    EvalResult run(const TypedDiagram& d) {
        Label root = opts.total.value_or(c.ring().unit());
        EvalResult res;
        res.closed = d.closed();
        res.source = basis(d.source, root);
        TreeBasis cur = res.source;
        Matrix acc = Matrix::Identity(cur.dimension(), cur.dimension());
        for (const auto& t : d.ops) {
            Matrix m = apply(t, cur);
            acc = m * acc;
        }
        res.target = cur;
        res.matrix = acc;
        if (res.closed) res.scalar = acc.size() ? acc(0, 0) : Complex(0.0);
        res.consumed.assign(consumed.begin(), consumed.end());
        return res;
    }
};

}  // namespace

Matrix measurement_projector(const SkeletalCategory& c, Label a, Label b, Label ch, const TreeBasis& basis, int pos) {
    const FusionRing& r = c.ring();
    if (r.N(a, b, ch) == 0)
        throw Error(ErrorKind::AdmissibilityError, "vertex " + r.name(a) + " x " + r.name(b) + " -> " + r.name(ch) + " is not admissible");
    const auto& lv = basis.leaves();
    if (pos < 1 || pos + 1 > static_cast<int>(lv.size()) || lv[pos - 1] != a || lv[pos] != b)
        throw Error(ErrorKind::SectorError, "projector labels do not match the basis leaves");
    std::vector<Label> fused = lv;
    fused[pos - 1] = ch;
    fused.erase(fused.begin() + pos);
    TreeBasis mid = enumerate_basis(c, fused, basis.root());
    Matrix f = pair_fuse(c, basis, mid, pos, ch, Strategy::Direct);
    return f.adjoint() * f;
}

EvalResult evaluate(const TypedDiagram& d, const SkeletalCategory& c, const EvalOptions& opts) {
    EvalResult res = Evaluator{c, opts, {}}.run(d);
    if (opts.cross_check) {
        EvalOptions other = opts;
        other.cross_check = false;
        other.strategy = opts.strategy == Strategy::Direct ? Strategy::PentagonDetour : Strategy::Direct;
        EvalResult alt = Evaluator{c, other, {}}.run(d);
        double diff = res.matrix.size() ? max_abs_diff(res.matrix, alt.matrix) : 0.0;
        if (diff > opts.tol.eq_tol)
            throw Error(ErrorKind::NonConfluent, "strategies disagree by " + std::to_string(diff));
    }
    return res;
}

EvalResult evaluate(const Diagram& d, const SkeletalCategory& c, const EvalOptions& opts) {
    return evaluate(typecheck(d, c), c, opts);
}

Diagram mirror(const Diagram& d, const SkeletalCategory& c) {
    TypedDiagram td = typecheck(d, c);
    Diagram m;
    m.meta = d.meta;
    std::vector<std::string> top;
    for (Label a : td.target) top.push_back(c.ring().name(a));
    m.strands = top;
    for (auto it = d.ops.rbegin(); it != d.ops.rend(); ++it) {
        DiagramOp op = *it;
        switch (op.kind) {
            case OpKind::BraidPos: op.kind = OpKind::BraidNeg; break;
            case OpKind::BraidNeg: op.kind = OpKind::BraidPos; break;
            case OpKind::Cup: op.kind = OpKind::Cap; break;
            case OpKind::Cap: op.kind = OpKind::Cup; break;
            case OpKind::Split: op.kind = OpKind::Fuse; break;
            case OpKind::Fuse: op.kind = OpKind::Split; break;
            case OpKind::Project: break;
            case OpKind::Twist:
            case OpKind::Loop:
                throw Error(ErrorKind::UnsupportedConfiguration, "mirror of twists and loops is not defined here");
        }
        m.ops.push_back(std::move(op));
    }
    return m;
}

}  // namespace gxcalc
