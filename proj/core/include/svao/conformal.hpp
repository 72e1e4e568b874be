#pragma once

#include "svao/check.hpp"
#include "svao/hmodule.hpp"
#include "svao/operad.hpp"

namespace svao {

// SUSY Lie conformal algebra data: a Lambda-bracket table on the generators
// (or, for finite carriers, on the basis) of V. Values live in a fixed
// one-variable context; extension to H-multiples is by sesquilinearity.
class LCAStructure {
public:
    LCAStructure() = default;
    LCAStructure(CarrierPtr V, CtxPtr ctx1);

    const CarrierPtr& V() const { return V_; }
    const CtxPtr& ctx1() const { return ctx1_; }
    int N() const { return V_->N; }
    Flavor flavor() const { return V_->flavor; }
    int nbar() const { return V_->N & 1; }

    void set_entry(int ga, int gb, MElem value);
    const MElem& entry(int ga, int gb) const;
    MElem zero1() const { return MElem(ctx1_, V_); }

    // parity legality: p([a_L b]) = p(a)+p(b)+Nbar on every entry
    CheckResult check_parity_legal() const;

private:
    CarrierPtr V_;
    CtxPtr ctx1_;
    std::map<std::pair<int, int>, MElem> table_;
    mutable MElem zero_;
};

// Generic parity-Nbar bilinear map with the sesquilinearity transformation
// rules in both slots, determined by base values on generator pairs. The
// Lambda-bracket, module Lambda-actions and their integrals all peel the same
// way, so the checkers share this engine.
struct SesqMap {
    CarrierPtr A, B, Out;  // slot carriers and value carrier
    int N = 1;
    std::function<MElem(int, int, const CtxPtr&, int)> base;
    int nbar() const { return N & 1; }
};

// Both arguments are module polynomials over `out`; Lambda coefficients are
// pulled out with the Koszul signs of a parity-Nbar map, nabla words peel by
// the sesquilinearity rules.
MElem sesq_bilinear(const SesqMap& f, const MElem& P, const MElem& Q, const CtxPtr& out, int var);

// F(x,y) = sum_I (-1)^{#I(N+1)} sigma(I) theta^{[N]\I} dot(S^I x, y)
//          + antideriv_lambda(lam(x, y)); the unique integral pairing with
// d_lambda F = lam, Res F = dot and the S^i residue conditions.
using PairFn = std::function<MElem(const MElem&, const MElem&, const CtxPtr&, int)>;
using DotFn = std::function<MElem(const MElem&, const MElem&)>;
MElem integral_pairing(int N, const PairFn& lam, const DotFn& dot, const MElem& x, const MElem& y,
                       const CtxPtr& out, int var);

// The bracket of two bare module elements (possibly carrying formal nabla
// words on free carriers), written into variable `var` of `out`.
MElem lam_bracket(const LCAStructure& L, const MElem& x, const MElem& y, const CtxPtr& out,
                  int var);

// Full bilinear extension where both arguments are module-valued polynomials
// over `out`; Lambda-coefficients are pulled out with Koszul signs against the
// parity-Nbar bracket.
MElem lam_bracket_poly(const LCAStructure& L, const MElem& P, const MElem& Q, const CtxPtr& out,
                       int var);

// [a_{-Lambda-nabla} b] written in `var` of `out`
MElem bracket_skew_side(const LCAStructure& L, const MElem& x, const MElem& y, const CtxPtr& out,
                        int var);

// Axiom checkers (skew on pairs, Jacobi on triples; sesquilinearity is
// structural for free carriers and checked on the tables for finite ones).
CheckResult check_sesquilinearity(const LCAStructure& L);
CheckResult check_skew(const LCAStructure& L);
CheckResult check_jacobi(const LCAStructure& L);
CheckReport check_lca_axioms(const LCAStructure& L);

// Jacobi defect [a_{L1}[b_{L2}c]] - (-1)^{(p(a)+Nbar)Nbar}[[a_{L1}b]_{L1+L2}c]
//   - (-1)^{(p(a)+Nbar)(p(b)+Nbar)}[b_{L2}[a_{L1}c]] over a 2-variable context.
MElem jacobi_defect(const LCAStructure& L, int ga, int gb, int gc, const CtxPtr& ctx2);

// --- the SUSY Lie conformal operad at small arity --------------------------

// Element of Ch(n) over Pi^{N+1} V in the reduced presentation: values on
// generator tuples are elements of V[Lambda_1..Lambda_{n-1}] with formal
// nabla acting on the coefficient module. `shift` is the per-factor parity
// shift (N+1 mod 2); `par` the element's parity in the shifted operad.
class ChElement {
public:
    ChElement() = default;
    ChElement(CarrierPtr V, int arity, int shift, int par);

    const CarrierPtr& V() const { return V_; }
    int arity() const { return arity_; }
    int shift() const { return shift_; }
    int par() const { return par_; }
    const CtxPtr& ctx() const { return ctx_; }

    int shifted_parity(int gen) const { return (V_->parity(gen) + shift_) & 1; }

    void set_value(const std::vector<int>& gens, MElem v);
    const MElem& value(const std::vector<int>& gens) const;
    bool is_zero() const;
    bool operator==(const ChElement& o) const;

private:
    CarrierPtr V_;
    int arity_ = 0, shift_ = 0, par_ = 0;
    CtxPtr ctx_;
    std::map<std::vector<int>, MElem> values_;
    mutable MElem zero_;
};

ChElement ch_unit(const CarrierPtr& V, int shift);
ChElement ch_sym_action(const ChElement& X, const Perm& sigma);
ChElement ch_compose(const ChElement& X, int pos, const ChElement& Y);
ChElement ch_box(const ChElement& X, const ChElement& Y);
ChElement ch_add(const ChElement& A, const ChElement& B);
ChElement ch_scaled(const ChElement& A, const Rat& c);

// eq-LCAstr dictionary: arity-2 odd element <-> bracket table
ChElement lca_to_mc(const LCAStructure& L);
LCAStructure mc_to_lca(const ChElement& X, const CtxPtr& ctx1);

// true iff X box X = 0 for X = lca_to_mc(L); requires (i),(ii) to hold
bool mc_check_lca(const LCAStructure& L);

}  // namespace svao
