#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gxcalc/numerics.hpp"

namespace gxcalc {

// Index of a simple object within its FusionRing.
struct Label {
    int id = 0;
    auto operator<=>(const Label&) const = default;
};

struct LabelHash {
    std::size_t operator()(Label l) const { return std::hash<int>{}(l.id); }
};

// Finite group given by its multiplication table. Element 0 is the identity.
class GroupSpec {
public:
    GroupSpec() : names_{"0"}, table_{{0}} {}
    GroupSpec(std::vector<std::string> names, std::vector<std::vector<int>> table);

    static GroupSpec cyclic(int n);
    static GroupSpec product(const GroupSpec& a, const GroupSpec& b);

    int order() const { return static_cast<int>(names_.size()); }
    int mul(int g, int h) const { return table_[g][h]; }
    int inv(int g) const;
    int identity() const { return 0; }
    const std::string& name(int g) const { return names_[g]; }
    int find(const std::string& name) const;  // throws UnknownName
    const std::vector<std::string>& names() const { return names_; }

    // Empty when the table is a group.
    std::vector<std::string> validate() const;

private:
    std::vector<std::string> names_;
    std::vector<std::vector<int>> table_;
};

// Fusion multiplicities, duals, G-grading and the label permutation of the
// G-action. Labels are ordered as declared; the unit comes first.
class FusionRing {
public:
    FusionRing() = default;
    FusionRing(GroupSpec group, std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const GroupSpec& group() const { return group_; }
    const std::string& name(Label a) const { return names_[a.id]; }
    const std::vector<std::string>& names() const { return names_; }
    Label find(const std::string& name) const;  // throws UnknownName
    bool has(const std::string& name) const;
    void add_alias(const std::string& alias, Label a) { aliases_[alias] = a; }
    const std::map<std::string, Label>& aliases() const { return aliases_; }

    Label unit() const { return Label{0}; }
    Label dual(Label a) const { return Label{dual_[a.id]}; }
    int grade(Label a) const { return grade_[a.id]; }
    Label act(int g, Label a) const { return Label{action_[g][a.id]}; }
    int N(Label a, Label b, Label c) const { return N_[idx(a, b, c)]; }
    std::vector<Label> channels(Label a, Label b) const;  // c with N^{ab}_c > 0
    std::vector<Label> labels() const;
    std::vector<Label> sector(int g) const;

    void set_N(Label a, Label b, Label c, int n) { N_[idx(a, b, c)] = n; }
    void set_dual(Label a, Label b) { dual_[a.id] = b.id; }
    void set_grade(Label a, int g) { grade_[a.id] = g; }
    void set_action(int g, std::vector<int> perm) { action_[g] = std::move(perm); }
    // Fills duals from N^{a b}_1 when they are unset (-1).
    void infer_duals();

    const std::vector<std::vector<int>>& action_table() const { return action_; }

private:
    std::size_t idx(Label a, Label b, Label c) const {
        auto n = static_cast<std::size_t>(names_.size());
        return (static_cast<std::size_t>(a.id) * n + b.id) * n + c.id;
    }

    GroupSpec group_;
    std::vector<std::string> names_;
    std::map<std::string, Label> aliases_;
    std::vector<int> N_;
    std::vector<int> dual_;
    std::vector<int> grade_;
    std::vector<std::vector<int>> action_;
};

// Each entry names one violated invariant.
std::vector<std::string> validate_ring(const FusionRing& r);

struct Dimensions {
    std::vector<double> d;  // indexed by Label::id
    double total = 0.0;     // D = sqrt(sum d^2)
    double operator[](Label a) const { return d[a.id]; }
};

Dimensions quantum_dimensions(const FusionRing& r);

struct AbelianSubgroup {
    std::vector<Label> labels;
    GroupSpec group;  // element k corresponds to labels[k]
};

AbelianSubgroup abelian_subgroup(const FusionRing& r, const Dimensions& dims, double eq_tol = 1e-9);

// g -> number of trivial-sector labels fixed by g, for g != identity.
std::map<int, int> defect_counts(const FusionRing& r);

}  // namespace gxcalc
