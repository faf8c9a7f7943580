#include "gxcalc/catfile.hpp"

#include <map>
#include <sstream>

#include "gxcalc/error.hpp"

namespace gxcalc {

namespace {

struct Line {
    int no = 0;
    std::string text;
};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view text) {
        std::istringstream in{std::string(text)};
        int no = 0;
        std::string section;
        for (std::string raw; std::getline(in, raw);) {
            ++no;
            auto hash = raw.find('#');
            std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
            if (s.empty()) continue;
            if (s.front() == '[') {
                if (s.back() != ']') throw SyntaxError(no, static_cast<int>(raw.find('[')) + 1, "']' closing section header");
                section = s.substr(1, s.size() - 2);
                static const char* known[] = {"category", "group", "objects", "alias", "fusion", "action",
                                              "F",        "R",     "U",       "eta",   "twist",  "S"};
                bool ok = false;
                for (const char* k : known) ok |= section == k;
                if (!ok) throw SyntaxError(no, 2, "a known section name");
                order_.push_back(section);
                sections_[section];
                continue;
            }
            if (section.empty()) throw SyntaxError(no, 1, "section header");
            sections_[section].push_back({no, s});
        }
    }

    SkeletalCategory run() {
        std::map<std::string, std::string> meta;
        for (const auto& l : get("category")) {
            auto [k, v] = split_eq(l);
            meta[trim(k)] = trim(v);
        }
        GroupSpec group = parse_group();
        std::vector<std::string> names;
        std::vector<std::pair<std::string, std::string>> sec_dual;
        for (const auto& l : get("objects")) {
            auto w = words(l.text);
            if (w.size() != 3) throw SyntaxError(l.no, 1, "'label sector dual'");
            names.push_back(w[0]);
            sec_dual.emplace_back(w[1], w[2]);
        }
        if (names.empty()) throw SyntaxError(1, 1, "an [objects] section");
        FusionRing ring(group, names);
        for (std::size_t k = 0; k < names.size(); ++k) {
            ring.set_grade(Label{static_cast<int>(k)}, group_elem(group, sec_dual[k].first, 0));
        }
        for (std::size_t k = 0; k < names.size(); ++k)
            ring.set_dual(Label{static_cast<int>(k)}, label(ring, sec_dual[k].second, 0));
        for (const auto& l : get("alias")) {
            auto [k, v] = split_eq(l);
            ring.add_alias(trim(k), label(ring, trim(v), l.no));
        }
        for (const auto& l : get("fusion")) {
            auto arrow = l.text.find("->");
            if (arrow == std::string::npos) throw SyntaxError(l.no, 1, "'a b -> c ...'");
            auto lhs = words(l.text.substr(0, arrow));
            if (lhs.size() != 2) throw SyntaxError(l.no, 1, "two labels before '->'");
            Label a = label(ring, lhs[0], l.no), b = label(ring, lhs[1], l.no);
            for (const auto& tok : words(l.text.substr(arrow + 2))) {
                auto star = tok.find('*');
                int mult = 1;
                std::string name = tok;
                if (star != std::string::npos && star > 0 && tok.find_first_not_of("0123456789", star + 1) == std::string::npos &&
                    star + 1 < tok.size()) {
                    name = tok.substr(0, star);
                    mult = std::stoi(tok.substr(star + 1));
                }
                ring.set_N(a, b, label(ring, name, l.no), mult);
            }
        }
        for (const auto& l : get("action")) {
            auto colon = l.text.find(':');
            if (colon == std::string::npos) throw SyntaxError(l.no, 1, "'g : labels'");
            int g = group_elem(group, trim(l.text.substr(0, colon)), l.no);
            std::vector<int> perm;
            for (const auto& w : words(l.text.substr(colon + 1))) perm.push_back(label(ring, w, l.no).id);
            if (perm.size() != names.size()) throw SyntaxError(l.no, static_cast<int>(colon) + 2, "one image per label");
            ring.set_action(g, perm);
        }

        SkeletalCategory c(meta.count("name") ? meta["name"] : "unnamed", ring);
        if (meta.count("orientation")) {
            if (meta["orientation"] == "standard") {
                c.orientation = Orientation::Standard;
            } else if (meta["orientation"] == "inverse") {
                c.orientation = Orientation::Inverse;
            } else {
                throw SyntaxError(line_of("category", "orientation"), 1, "'standard' or 'inverse'");
            }
        }
        c.partial = meta["partial"] == "true";
        c.trivial_u_eta = meta["trivial_u_eta"] == "true";

        for (const auto& l : get("F")) {
            auto [k, v] = keyed(c.ring(), l, 6, group, {});
            c.F[{k[0], k[1], k[2], k[3], k[4], k[5]}] = v;
        }
        for (const auto& l : get("R")) {
            auto [k, v] = keyed(c.ring(), l, 3, group, {});
            c.R[{k[0], k[1], k[2]}] = v;
        }
        for (const auto& l : get("U")) {
            auto [k, v] = keyed(c.ring(), l, 4, group, {0});
            c.U[{k[0], k[1], k[2], k[3]}] = v;
        }
        for (const auto& l : get("eta")) {
            auto [k, v] = keyed(c.ring(), l, 3, group, {1, 2});
            c.eta[{k[0], k[1], k[2]}] = v;
        }
        for (const auto& l : get("twist")) {
            auto [k, v] = keyed(c.ring(), l, 1, group, {});
            c.twists[k[0]] = v;
        }
        if (sections_.count("S")) {
            auto sector = c.ring().sector(group.identity());
            std::vector<std::vector<Scalar>> S(sector.size());
            for (const auto& l : get("S")) {
                auto colon = l.text.find(':');
                if (colon == std::string::npos) throw SyntaxError(l.no, 1, "'label : v ; v ...'");
                int row = c.sector_index(label(c.ring(), trim(l.text.substr(0, colon)), l.no));
                if (row < 0) throw SyntaxError(l.no, 1, "a trivial-sector label");
                std::string rest = l.text.substr(colon + 1);
                std::size_t start = 0;
                while (true) {
                    auto semi = rest.find(';', start);
                    std::string tok = trim(rest.substr(start, semi == std::string::npos ? std::string::npos : semi - start));
                    auto v = parse_scalar(tok);
                    if (!v) throw SyntaxError(l.no, static_cast<int>(colon + start) + 2, "a scalar value");
                    S[row].push_back(*v);
                    if (semi == std::string::npos) break;
                    start = semi + 1;
                }
            }
            for (const auto& row : S)
                if (row.size() != sector.size()) throw SyntaxError(line_of("S", ""), 1, "a square S matrix over sector 0");
            c.S = S;
        }
        c.finalize();
        return c;
    }

private:
    const std::vector<Line>& get(const std::string& s) const {
        static const std::vector<Line> empty;
        auto it = sections_.find(s);
        return it == sections_.end() ? empty : it->second;
    }

    int line_of(const std::string& s, const std::string& prefix) const {
        for (const auto& l : get(s))
            if (l.text.rfind(prefix, 0) == 0) return l.no;
        return 1;
    }

    static std::pair<std::string, std::string> split_eq(const Line& l) {
        auto eq = l.text.find('=');
        if (eq == std::string::npos) throw SyntaxError(l.no, static_cast<int>(l.text.size()) + 1, "'='");
        return {l.text.substr(0, eq), l.text.substr(eq + 1)};
    }

    static Label label(const FusionRing& r, const std::string& name, int line) {
        if (!r.has(name)) throw SyntaxError(line, 1, "a declared label, got '" + name + "'");
        return r.find(name);
    }

    static int group_elem(const GroupSpec& g, const std::string& name, int line) {
        for (int k = 0; k < g.order(); ++k)
            if (g.name(k) == name) return k;
        throw SyntaxError(line, 1, "a group element, got '" + name + "'");
    }

    GroupSpec parse_group() const {
        const auto& ls = get("group");
        if (ls.empty()) return GroupSpec{};
        auto names = words(ls[0].text);
        std::vector<std::vector<int>> table(names.size(), std::vector<int>(names.size(), 0));
        auto idx = [&](const std::string& n, int line) {
            for (std::size_t k = 0; k < names.size(); ++k)
                if (names[k] == n) return static_cast<int>(k);
            throw SyntaxError(line, 1, "a group element, got '" + n + "'");
        };
        if (ls.size() != names.size() + 1) throw SyntaxError(ls[0].no, 1, "one table row per group element");
        for (std::size_t k = 1; k < ls.size(); ++k) {
            auto colon = ls[k].text.find(':');
            if (colon == std::string::npos) throw SyntaxError(ls[k].no, 1, "'g : products'");
            int g = idx(trim(ls[k].text.substr(0, colon)), ls[k].no);
            auto row = words(ls[k].text.substr(colon + 1));
            if (row.size() != names.size()) throw SyntaxError(ls[k].no, static_cast<int>(colon) + 2, "one product per element");
            for (std::size_t h = 0; h < row.size(); ++h) table[g][h] = idx(row[h], ls[k].no);
        }
        GroupSpec G(names, table);
        if (!G.validate().empty()) throw SyntaxError(ls[0].no, 1, "a group table (" + G.validate().front() + ")");
        return G;
    }

    // n key fields (labels, or group elements at the listed positions) then '= value'
    static std::pair<std::vector<int>, Scalar> keyed(const FusionRing& r, const Line& l, std::size_t n,
                                                     const GroupSpec& g, std::vector<std::size_t> group_pos) {
        auto [lhs, rhs] = split_eq(l);
        auto w = words(lhs);
        if (w.size() != n) throw SyntaxError(l.no, 1, std::to_string(n) + " indices before '='");
        std::vector<int> key;
        for (std::size_t k = 0; k < n; ++k) {
            bool is_group = std::find(group_pos.begin(), group_pos.end(), k) != group_pos.end();
            key.push_back(is_group ? group_elem(g, w[k], l.no) : label(r, w[k], l.no).id);
        }
        auto v = parse_scalar(rhs);
        if (!v) throw SyntaxError(l.no, static_cast<int>(lhs.size()) + 2, "a scalar value");
        return {key, *v};
    }

    std::map<std::string, std::vector<Line>> sections_;
    std::vector<std::string> order_;
};

}  // namespace

SkeletalCategory parse_category(std::string_view text) { return Parser(text).run(); }

std::string emit_category(const SkeletalCategory& c) {
    const FusionRing& r = c.ring();
    const GroupSpec& G = r.group();
    std::ostringstream out;
    auto n = [&](int id) { return r.name(Label{id}); };
    out << "[category]\n";
    out << "name = " << c.name() << "\n";
    out << "orientation = " << (c.orientation == Orientation::Standard ? "standard" : "inverse") << "\n";
    out << "partial = " << (c.partial ? "true" : "false") << "\n";
    out << "trivial_u_eta = " << (c.trivial_u_eta ? "true" : "false") << "\n\n";
    out << "[group]\n";
    for (int g = 0; g < G.order(); ++g) out << (g ? " " : "") << G.name(g);
    out << "\n";
    for (int g = 0; g < G.order(); ++g) {
        out << G.name(g) << " :";
        for (int h = 0; h < G.order(); ++h) out << " " << G.name(G.mul(g, h));
        out << "\n";
    }
    out << "\n[objects]\n";
    for (Label a : r.labels()) out << r.name(a) << " " << G.name(r.grade(a)) << " " << r.name(r.dual(a)) << "\n";
    if (!r.aliases().empty()) {
        out << "\n[alias]\n";
        for (const auto& [k, v] : r.aliases()) out << k << " = " << r.name(v) << "\n";
    }
    out << "\n[fusion]\n";
    for (Label a : r.labels())
        for (Label b : r.labels()) {
            auto ch = r.channels(a, b);
            if (ch.empty()) continue;
            out << r.name(a) << " " << r.name(b) << " ->";
            for (Label x : ch) {
                out << " " << r.name(x);
                if (r.N(a, b, x) > 1) out << "*" << r.N(a, b, x);
            }
            out << "\n";
        }
    out << "\n[action]\n";
    for (int g = 0; g < G.order(); ++g) {
        out << G.name(g) << " :";
        for (Label a : r.labels()) out << " " << r.name(r.act(g, a));
        out << "\n";
    }
    auto sorted = [](const auto& table) { return std::map(table.begin(), table.end()); };
    out << "\n[F]\n";
    for (const auto& [k, v] : sorted(c.F))
        out << n(k[0]) << " " << n(k[1]) << " " << n(k[2]) << " " << n(k[3]) << " " << n(k[4]) << " " << n(k[5])
            << " = " << v.str() << "\n";
    out << "\n[R]\n";
    for (const auto& [k, v] : sorted(c.R)) out << n(k[0]) << " " << n(k[1]) << " " << n(k[2]) << " = " << v.str() << "\n";
    if (!c.U.empty()) {
        out << "\n[U]\n";
        for (const auto& [k, v] : sorted(c.U))
            out << G.name(k[0]) << " " << n(k[1]) << " " << n(k[2]) << " " << n(k[3]) << " = " << v.str() << "\n";
    }
    if (!c.eta.empty()) {
        out << "\n[eta]\n";
        for (const auto& [k, v] : sorted(c.eta)) out << n(k[0]) << " " << G.name(k[1]) << " " << G.name(k[2]) << " = " << v.str() << "\n";
    }
    if (!c.twists.empty()) {
        out << "\n[twist]\n";
        for (const auto& [k, v] : c.twists) out << n(k) << " = " << v.str() << "\n";
    }
    if (c.S) {
        out << "\n[S]\n";
        auto sector = r.sector(G.identity());
        for (std::size_t i = 0; i < sector.size(); ++i) {
            out << r.name(sector[i]) << " :";
            for (std::size_t j = 0; j < sector.size(); ++j) out << (j ? " ; " : " ") << (*c.S)[i][j].str();
            out << "\n";
        }
    }
    return out.str();
}

}  // namespace gxcalc
