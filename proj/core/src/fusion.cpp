#include "gxcalc/fusion.hpp"

#include <algorithm>
#include <cmath>

#include "gxcalc/error.hpp"

namespace gxcalc {

GroupSpec::GroupSpec(std::vector<std::string> names, std::vector<std::vector<int>> table)
    : names_(std::move(names)), table_(std::move(table)) {
    if (names_.empty() || names_.size() > 16)
        throw Error(ErrorKind::InvalidData, "group order must be between 1 and 16");
    if (table_.size() != names_.size())
        throw Error(ErrorKind::InvalidData, "group table has wrong row count");
    for (const auto& row : table_) {
        if (row.size() != names_.size())
            throw Error(ErrorKind::InvalidData, "group table has wrong column count");
        for (int x : row)
            if (x < 0 || x >= order()) throw Error(ErrorKind::InvalidData, "group table entry out of range");
    }
}

GroupSpec GroupSpec::cyclic(int n) {
    std::vector<std::string> names;
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int g = 0; g < n; ++g) {
        names.push_back(std::to_string(g));
        for (int h = 0; h < n; ++h) table[g][h] = (g + h) % n;
    }
    return GroupSpec(std::move(names), std::move(table));
}

GroupSpec GroupSpec::product(const GroupSpec& a, const GroupSpec& b) {
    int na = a.order();
    int nb = b.order();
    std::vector<std::string> names;
    std::vector<std::vector<int>> table(na * nb, std::vector<int>(na * nb));
    for (int g = 0; g < na * nb; ++g) {
        names.push_back(g == 0 ? "0" : a.name(g / nb) + "." + b.name(g % nb));
        for (int h = 0; h < na * nb; ++h)
            table[g][h] = a.mul(g / nb, h / nb) * nb + b.mul(g % nb, h % nb);
    }
    return GroupSpec(std::move(names), std::move(table));
}

int GroupSpec::inv(int g) const {
    for (int h = 0; h < order(); ++h)
        if (table_[g][h] == 0) return h;
    throw Error(ErrorKind::InvalidData, "group element " + names_[g] + " has no inverse");
}

int GroupSpec::find(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw Error(ErrorKind::UnknownName, "group element '" + name + "'");
    return static_cast<int>(it - names_.begin());
}

std::vector<std::string> GroupSpec::validate() const {
    std::vector<std::string> out;
    int n = order();
    for (int g = 0; g < n; ++g)
        if (table_[0][g] != g || table_[g][0] != g) out.push_back("element 0 is not the identity");
    for (int g = 0; g < n; ++g) {
        bool has_inv = false;
        for (int h = 0; h < n; ++h) has_inv |= table_[g][h] == 0 && table_[h][g] == 0;
        if (!has_inv) out.push_back("element " + names_[g] + " has no inverse");
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) {
                    out.push_back("group table is not associative at (" + names_[a] + "," + names_[b] +
                                  "," + names_[c] + ")");
                    return out;
                }
    return out;
}

FusionRing::FusionRing(GroupSpec group, std::vector<std::string> names)
    : group_(std::move(group)), names_(std::move(names)) {
    auto n = names_.size();
    N_.assign(n * n * n, 0);
    dual_.assign(n, -1);
    grade_.assign(n, 0);
    std::vector<int> id(n);
    for (std::size_t k = 0; k < n; ++k) id[k] = static_cast<int>(k);
    action_.assign(group_.order(), id);
}

Label FusionRing::find(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it != names_.end()) return Label{static_cast<int>(it - names_.begin())};
    auto al = aliases_.find(name);
    if (al != aliases_.end()) return al->second;
    throw Error(ErrorKind::UnknownName, "label '" + name + "'");
}

bool FusionRing::has(const std::string& name) const {
    return std::find(names_.begin(), names_.end(), name) != names_.end() || aliases_.count(name);
}

std::vector<Label> FusionRing::channels(Label a, Label b) const {
    std::vector<Label> out;
    for (int c = 0; c < size(); ++c)
        if (N(a, b, Label{c}) > 0) out.push_back(Label{c});
    return out;
}

std::vector<Label> FusionRing::labels() const {
    std::vector<Label> out;
    for (int c = 0; c < size(); ++c) out.push_back(Label{c});
    return out;
}

std::vector<Label> FusionRing::sector(int g) const {
    std::vector<Label> out;
    for (int c = 0; c < size(); ++c)
        if (grade_[c] == g) out.push_back(Label{c});
    return out;
}

void FusionRing::infer_duals() {
    for (int a = 0; a < size(); ++a) {
        if (dual_[a] >= 0) continue;
        for (int b = 0; b < size(); ++b)
            if (N(Label{a}, Label{b}, unit()) > 0) dual_[a] = b;
    }
}

std::vector<std::string> validate_ring(const FusionRing& r) {
    std::vector<std::string> out;
    const GroupSpec& G = r.group();
    for (auto& m : G.validate()) out.push_back("group: " + m);
    if (!out.empty()) return out;
    auto L = r.labels();
    const Label one = r.unit();
    auto nm = [&](Label a) { return r.name(a); };

    for (Label a : L)
        for (Label b : L) {
            int want = a == b ? 1 : 0;
            if (r.N(one, a, b) != want || r.N(a, one, b) != want)
                out.push_back("unit: N^{1" + nm(a) + "}_" + nm(b) + " != delta");
        }

    for (Label a : L) {
        Label ad = r.dual(a);
        if (ad.id < 0 || ad.id >= r.size()) {
            out.push_back("dual of " + nm(a) + " undefined");
            continue;
        }
        if (r.dual(ad) != a) out.push_back("dual is not an involution at " + nm(a));
        if (r.N(a, ad, one) < 1) out.push_back("N^{" + nm(a) + " " + nm(ad) + "}_1 = 0");
        for (Label b : L)
            if (b != ad && r.N(a, b, one) > 0) out.push_back("unit appears in " + nm(a) + "x" + nm(b) + " but " + nm(b) + " is not the dual");
    }

    for (Label a : L)
        for (Label b : L)
            for (Label c : L)
                for (Label d : L) {
                    long lhs = 0;
                    long rhs = 0;
                    for (Label e : L) {
                        lhs += static_cast<long>(r.N(a, b, e)) * r.N(e, c, d);
                        rhs += static_cast<long>(r.N(b, c, e)) * r.N(a, e, d);
                    }
                    if (lhs != rhs)
                        out.push_back("associativity fails at (" + nm(a) + "," + nm(b) + "," + nm(c) + "," + nm(d) + ")");
                }

    for (Label a : L)
        for (Label b : L)
            for (Label c : L)
                if (r.N(a, b, c) > 0 && r.grade(c) != G.mul(r.grade(a), r.grade(b)))
                    out.push_back("grading: " + nm(a) + "x" + nm(b) + " -> " + nm(c));

    if (r.grade(one) != G.identity()) out.push_back("unit is not in the trivial sector");

    for (int g = 0; g < G.order(); ++g) {
        const auto& perm = r.action_table()[g];
        std::vector<int> seen(r.size(), 0);
        for (int x : perm)
            if (x >= 0 && x < r.size()) ++seen[x];
        if (std::any_of(seen.begin(), seen.end(), [](int k) { return k != 1; })) {
            out.push_back("action of " + G.name(g) + " is not a permutation");
            continue;
        }
        if (r.act(g, one) != one) out.push_back("action of " + G.name(g) + " moves the unit");
        for (Label x : L) {
            int want = G.mul(G.mul(g, r.grade(x)), G.inv(g));
            if (r.grade(r.act(g, x)) != want)
                out.push_back("action-grading: " + G.name(g) + " on " + nm(x));
            if (r.act(g, r.dual(x)) != r.dual(r.act(g, x)))
                out.push_back("action of " + G.name(g) + " does not commute with dual at " + nm(x));
        }
        for (Label a : L)
            for (Label b : L)
                for (Label c : L)
                    if (r.N(r.act(g, a), r.act(g, b), r.act(g, c)) != r.N(a, b, c)) {
                        out.push_back("action of " + G.name(g) + " does not preserve fusion at (" + nm(a) + "," + nm(b) + "," + nm(c) + ")");
                        goto next_g;
                    }
        for (int h = 0; h < G.order(); ++h)
            for (Label x : L)
                if (r.act(g, r.act(h, x)) != r.act(G.mul(g, h), x)) {
                    out.push_back("action is not a homomorphism at (" + G.name(g) + "," + G.name(h) + ")");
                    goto next_g;
                }
    next_g:;
    }
    return out;
}

Dimensions quantum_dimensions(const FusionRing& r) {
    // d is the common PF eigenvector of every N_a; iterate on the strictly
    // positive sum M_{bc} = sum_a N^{ab}_c, which is primitive.
    int n = r.size();
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) M(b, c) += r.N(Label{a}, Label{b}, Label{c});
    Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
    bool converged = false;
    for (int step = 0; step < 100000; ++step) {
        Eigen::VectorXd w = M * v;
        w /= w.maxCoeff();
        double delta = (w - v).cwiseAbs().maxCoeff();
        v = w;
        if (delta < 1e-13) {
            converged = true;
            break;
        }
    }
    if (!converged || v(0) <= 0.0) throw Error(ErrorKind::NonConvergent, "power iteration for quantum dimensions");
    Dimensions dims;
    dims.d.resize(n);
    double sum = 0.0;
    for (int b = 0; b < n; ++b) {
        dims.d[b] = v(b) / v(0);
        sum += dims.d[b] * dims.d[b];
    }
    dims.total = std::sqrt(sum);
    return dims;
}

AbelianSubgroup abelian_subgroup(const FusionRing& r, const Dimensions& dims, double eq_tol) {
    AbelianSubgroup out;
    for (Label a : r.labels())
        if (std::abs(dims[a] - 1.0) < eq_tol) out.labels.push_back(a);
    auto pos = [&](Label c) -> int {
        auto it = std::find(out.labels.begin(), out.labels.end(), c);
        return it == out.labels.end() ? -1 : static_cast<int>(it - out.labels.begin());
    };
    std::size_t k = out.labels.size();
    std::vector<std::vector<int>> table(k, std::vector<int>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            auto ch = r.channels(out.labels[i], out.labels[j]);
            if (ch.size() != 1 || r.N(out.labels[i], out.labels[j], ch[0]) != 1 || pos(ch[0]) < 0)
                throw Error(ErrorKind::NotClosed, r.name(out.labels[i]) + " x " + r.name(out.labels[j]));
            table[i][j] = pos(ch[0]);
        }
    std::vector<std::string> names;
    for (Label a : out.labels) names.push_back(a == r.unit() ? "0" : r.name(a));
    out.group = GroupSpec(std::move(names), std::move(table));
    return out;
}

std::map<int, int> defect_counts(const FusionRing& r) {
    std::map<int, int> out;
    for (int g = 1; g < r.group().order(); ++g) {
        int count = 0;
        for (Label a : r.sector(0))
            if (r.act(g, a) == a) ++count;
        out[g] = count;
    }
    return out;
}

}  // namespace gxcalc
