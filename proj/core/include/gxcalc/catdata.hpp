#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gxcalc/exact.hpp"
#include "gxcalc/fusion.hpp"
#include "gxcalc/numerics.hpp"

namespace gxcalc {

using FKey = std::array<int, 6>;    // (a,b,c,d,e,f): ((ab)_e c)_d -> (a(bc)_f)_d
using RKey = std::array<int, 3>;    // (a,b,c): R^{ab}_c
using UKey = std::array<int, 4>;    // (k,a,b,c): U_k(a,b;c), k a group element
using EtaKey = std::array<int, 3>;  // (x,g,h): eta_x(g,h), g,h group elements

template <std::size_t N>
struct ArrayHash {
    std::size_t operator()(const std::array<int, N>& k) const {
        std::size_t h = 1469598103934665603ull;
        for (int x : k) h = (h ^ static_cast<std::size_t>(x + 1)) * 1099511628211ull;
        return h;
    }
};

template <std::size_t N>
using SymbolTable = std::unordered_map<std::array<int, N>, Scalar, ArrayHash<N>>;

// Which crossing a positive generator (DSL braid+) denotes. Standard: the
// left strand passes over and the coefficient is R; inverse: the left
// strand passes under and the coefficient is R^{-1}.
enum class Orientation { Standard, Inverse };

struct FBlock {
    std::vector<Label> rows;  // e
    std::vector<Label> cols;  // f
    Matrix m;
};

class SkeletalCategory {
public:
    SkeletalCategory() = default;
    SkeletalCategory(std::string name, FusionRing ring);

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }
    const FusionRing& ring() const { return ring_; }
    FusionRing& mutable_ring() { return ring_; }
    Label L(const std::string& n) const { return ring_.find(n); }

    Orientation orientation = Orientation::Standard;
    bool partial = false;
    // Absent U and eta entries read as 1 when set.
    bool trivial_u_eta = false;

    // Raw tables; setters accept exact or numeric scalars.
    SymbolTable<6> F;
    SymbolTable<3> R;
    SymbolTable<4> U;
    SymbolTable<3> eta;
    std::map<int, Scalar> twists;
    // Over ring().sector(0) in label order; stored unitary (already / D).
    std::optional<std::vector<std::vector<Scalar>>> S;

    void setF(Label a, Label b, Label c, Label d, Label e, Label f, Scalar v);
    void setR(Label a, Label b, Label c, Scalar v);

    bool f_admissible(Label a, Label b, Label c, Label d, Label e, Label f) const;
    // Lookups. Non-admissible F reads 0; admissible but absent F throws
    // MissingSymbol unless an argument is the unit.
    Complex f(Label a, Label b, Label c, Label d, Label e, Label f) const;
    Complex r(Label a, Label b, Label c) const;
    Complex u(int k, Label a, Label b, Label c) const;
    Complex eta_of(Label x, int g, int h) const;
    Complex theta(Label a) const;
    bool has_r(Label a, Label b, Label c) const;
    bool has_S() const { return S.has_value(); }
    Complex s(Label a, Label b) const;  // trivial-sector labels only

    FBlock f_block(Label a, Label b, Label c, Label d) const;
    // Inverse of the block, as a map from (f) back to (e).
    FBlock f_block_inverse(Label a, Label b, Label c, Label d) const;

    // Caches quantum dimensions; call once after the ring is final.
    void finalize();
    const Dimensions& dims() const;
    double d(Label a) const { return dims()[a]; }

    int sector_index(Label a) const;  // position within sector(0), or -1

private:
    std::string name_;
    FusionRing ring_;
    std::optional<Dimensions> dims_;
};

struct Bicharacter {
    GroupSpec group;
    std::vector<std::vector<Scalar>> chi;
    Scalar tau;

    // Empty when symmetric, multiplicative, nondegenerate and tau^2 = 1/|A|.
    std::vector<std::string> validate(double tol = 1e-9) const;
    bool nondegenerate(double tol = 1e-9) const;
    // chi(a,b) = exp(2 pi i k a b / n) on Z_n, tau = sign/sqrt(n).
    static Bicharacter cyclic(int n, int k, int tau_sign = 1);
};

// Objects A plus m; A in sector 0, m in sector 1 of Z2; the Z2 action
// inverts A and fixes m. label_names, if given, names A's elements.
SkeletalCategory make_tambara_yamagami(const Bicharacter& chi, const std::string& name = "ty",
                                       std::vector<std::string> label_names = {},
                                       const std::string& m_name = "m");

SkeletalCategory deligne_product(const SkeletalCategory& c1, const SkeletalCategory& c2,
                                 const std::string& name = {});

// Blocks failing unitarity within tol; empty when unitary.
std::vector<std::string> verify_unitarity(const SkeletalCategory& c, double tol = 1e-9);

}  // namespace gxcalc
