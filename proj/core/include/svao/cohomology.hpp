#pragma once

#include "svao/vertex.hpp"

namespace svao {

// Module data over a SUSY vertex algebra candidate: a Lambda-action table
// rho_L(a, x) into M[Lambda] and a dot action rho(a, x) into M, both on
// generator pairs (basis pairs for finite carriers).
class VAModule {
public:
    VAModule() = default;
    VAModule(VAStructure base, CarrierPtr M);

    const VAStructure& base() const { return base_; }
    const CarrierPtr& V() const { return base_.V(); }
    const CarrierPtr& M() const { return M_; }
    int N() const { return base_.N(); }
    int nbar() const { return base_.nbar(); }
    Flavor flavor() const { return base_.flavor(); }
    const CtxPtr& ctx1() const { return ctx1_; }
    CtxPtr ctx0m() const { return make_context(flavor(), N(), {}, true); }

    void set_lambda_action(int ga, int gx, MElem value);  // value in M[ctx1]
    void set_dot_action(int ga, int gx, MElem value);     // bare M element
    const MElem& lambda_entry(int ga, int gx) const;
    const MElem& dot_entry(int ga, int gx) const;

    MElem gen_m(int g) const { return MElem::gen(ctx0m(), M_, g); }

    // extended actions (sesquilinear peel in both slots)
    MElem act_lambda(const MElem& a, const MElem& x, const CtxPtr& out, int var) const;
    MElem act_lambda_poly(const MElem& P, const MElem& Q, const CtxPtr& out, int var) const;
    MElem act_dot(const MElem& a, const MElem& x) const;

    // right actions of eq ract: x_L a and x . a
    MElem right_lambda(const MElem& x, const MElem& a, const CtxPtr& out, int var) const;
    MElem right_dot(const MElem& x, const MElem& a) const;

    // integral of the Lambda-action (and of the right action)
    MElem integral_action(const MElem& a, const MElem& x, const CtxPtr& out, int var) const;
    MElem integral_right_action(const MElem& x, const MElem& a, const CtxPtr& out, int var) const;

private:
    VAStructure base_;
    CarrierPtr M_;
    CtxPtr ctx1_;
    std::map<std::pair<int, int>, MElem> rho_l_, rho_dot_;
    mutable MElem zero1_, zero0_;
};

// Module axiom checkers. level "lca": sesquilinearity + the Jacobi-type
// identity; level "va" adds the derivation, associativity and Wick-type
// compatibilities with the dot action.
CheckReport check_module_axioms(const VAModule& W, bool va_level);

// adjoint module M = V of a structure
VAModule adjoint_module(const VAStructure& S);

// --- quotients and Casimirs --------------------------------------------------

// basis data of M / nabla M with the projection in coordinates
struct QuotientBasis {
    std::vector<MElem> reps;                 // class representatives in M
    std::function<Vec(const MElem&)> coords;  // class coordinates of an element
    int dim() const { return static_cast<int>(reps.size()); }
};
QuotientBasis mod_nabla_basis(const CtxPtr& ctx0, const CarrierPtr& M, int max_word_degree = 0);

// Casimir classes: x in M/nabla M with a_{-nabla} x = 0 for all a.
struct CasimirResult {
    int dim = 0;
    std::vector<MElem> basis;  // representatives in M
};
CasimirResult casimirs(const VAModule& W);

// --- cochains in degree 0..2 --------------------------------------------------

struct Cochain0 {
    MElem rep;  // element of M (class modulo nabla M)
};

struct Cochain1 {
    int parity = 0;
    std::vector<MElem> images;  // D(generator of V) in M, indexed by V basis
};

struct Cochain2 {
    int parity = 1;
    // beta(a,b) in M[Lambda] (ctx1), em(a,b) in M; S_2-invariance separately
    std::map<std::pair<int, int>, MElem> beta, em;
};

// the integral-form value F_Y(a,b) of a degree-2 cochain
MElem cochain2_F(const VAModule& W, const Cochain2& Y, int ga, int gb, const CtxPtr& out, int var);
// eq W:skecom-shaped invariance condition on the pair tables
CheckResult cochain2_invariance(const VAModule& W, const Cochain2& Y);

Cochain1 differential0(const VAModule& W, const Cochain0& x);
Cochain2 differential1(const VAModule& W, const Cochain1& D);
// degree-2 "differential": the axiom defects of the deformed structure E_Y
CheckReport differential2(const VAModule& W, const Cochain2& Y);

bool cochain1_is_zero(const Cochain1& D);
bool cochain2_is_zero(const Cochain2& Y);

// --- linear-algebra presentations ---------------------------------------------

// basis of Hom_H(V, M) of the given parity; for free carriers images are
// truncated at nabla-word degree <= deg_bound
std::vector<Cochain1> cochain1_space(const VAModule& W, int parity, int deg_bound);

// derivation conditions of Def der(1) as a linear subspace of the above
bool is_derivation(const VAModule& W, const Cochain1& D);
// inner derivation attached to x in M (the Hch0Cas-proof formula)
Cochain1 inner_derivation(const VAModule& W, const MElem& x);
// Def der(2) route: a -> (x_Lambda a)|_{Lambda=0}
Cochain1 inner_derivation_ract(const VAModule& W, const MElem& x);

struct H0Result {
    int dim_kernel_route = 0;   // via differential0
    int dim_casimir_route = 0;  // via Def Cas
    bool agree = false;
};
H0Result h0(const VAModule& W);

struct H1Result {
    int deg_bound = 2;
    int dim_der = 0;
    int dim_ind = 0;   // dim(Ind n Der_{<=d})
    int dim_h1 = 0;    // dim_der - dim_ind
    bool ker_d1_equals_der = false;
    bool im_d0_equals_ind = false;
};
H1Result h1(const VAModule& W, int deg_bound);

// --- extensions ----------------------------------------------------------------

// structure on V + M attached to an odd 2-cochain Y (Y = 0 gives the split
// direct sum); non-cocycles are built anyway for negative testing.
VAStructure build_extension(const VAModule& W, const Cochain2& Y);
CheckReport verify_extension(const VAStructure& E);
// does Y - Y2 = differential1(Phi) have an even solution Phi (degree <= d)?
// Returns the witness images on success.
bool cohomologous(const VAModule& W, const Cochain2& Y, const Cochain2& Y2, int deg_bound,
                  std::vector<MElem>* witness);

}  // namespace svao
