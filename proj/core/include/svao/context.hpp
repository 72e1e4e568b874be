#pragma once

#include "svao/ring.hpp"

#include <cstdint>
#include <optional>

namespace svao {

enum class Flavor { W, K };

inline const char* flavor_name(Flavor f) { return f == Flavor::W ? "W" : "K"; }

using IndexSet = uint32_t;  // subset of [N], bit i-1 = index i

int popcount(IndexSet s);
IndexSet full_set(int N);

// sigma(I,J): theta^I theta^J = sigma(I,J) theta^{I u J}; 0 iff overlap.
int sigma(IndexSet I, IndexSet J);
// sigma(I) = sigma(I, [N] \ I)
int sigma_compl(IndexSet I, int N);

// One flavored polynomial superalgebra in supervariables
// Lambda_v = (lambda_v, theta_v^1..theta_v^N), v running over `vars`, with an
// optional formal nabla = (T, S^1..S^N) block on the right of the monomial
// order. Relations per flavor:
//   W: free (super)commutative.
//   K: theta_v^i theta_v^j + theta_v^j theta_v^i = -2 d_ij lambda_v,
//      S^i S^j + S^j S^i = 2 d_ij T,  {S^i, theta_v^j} = 2 d_ij lambda_v.
// The S-theta cross relation is the unique convention making -Lambda-nabla a
// K supervariable and the skew substitution an involution.
class SuperContext {
public:
    SuperContext(Flavor flavor, int N, std::vector<std::string> vars, bool nabla);

    Flavor flavor;
    int N;
    std::vector<std::string> vars;
    bool has_nabla;

    const TablePtr& table() const { return tab_; }
    int n_vars() const { return static_cast<int>(vars.size()); }

    int lambda_id(int v) const { return v; }
    int T_id() const { return n_vars(); }
    int theta_id(int v, int i) const { return v * N + (i - 1); }  // i in [N]
    int S_id(int i) const { return n_vars() * N + (i - 1); }

    Poly lambda(int v) const { return Poly::even_gen(tab_, lambda_id(v)); }
    Poly T() const { return Poly::even_gen(tab_, T_id()); }
    Poly theta(int v, int i) const { return Poly::odd_gen(tab_, theta_id(v, i)); }
    Poly S(int i) const { return Poly::odd_gen(tab_, S_id(i)); }
    Poly theta_set(int v, IndexSet I) const;     // theta_v^{i1}...theta_v^{ir}
    Poly monomial(int v, int m, IndexSet I) const;  // Lambda_v^{m|I}
    Poly one() const { return Poly::one(tab_); }
    Poly zero() const { return Poly::zero(tab_); }

    // Splits a monomial as lambda-block under variable v: (m, I, rest).
    // `rest` is the monomial with variable v's content removed; `sign` the
    // Koszul sign of pulling theta_v^I to the front of the odd word.
    struct VarSplit {
        int m;
        IndexSet I;
        Mono rest;
        int sign;
    };
    VarSplit split_var(const Mono& mono, int v) const;

    bool same(const SuperContext& o) const;

    // canonical text form, e.g. "3*l1^2*t1{1,2}"
    std::string render_mono(const Mono& m) const;
    std::string render(const Poly& p) const;

private:
    TablePtr tab_;
};

using CtxPtr = std::shared_ptr<const SuperContext>;

CtxPtr make_context(Flavor flavor, int N, std::vector<std::string> vars, bool nabla = false);

// Affine substitution images for one supervariable: a signed sum of
// supervariables of the TARGET context plus optionally the formal nabla.
struct AffineImage {
    // (coefficient, variable index in the target) pairs; var -1 = nabla.
    std::vector<std::pair<int, int>> parts;
};

// Substitute supervariable `v` (of src) with the affine image, mapping into
// `dst`. Other variables must exist in dst under the same name; nabla maps to
// nabla. Expansion follows the ordered product
// (sum lambda)^m (sum theta^{i_1}) ... (sum theta^{i_r}).
Poly substitute_affine(const SuperContext& src, const Poly& p, int v,
                       const AffineImage& img, const CtxPtr& dst);

}  // namespace svao
