#pragma once

#include "svao/conformal.hpp"
#include "svao/superfun.hpp"

namespace svao {

// Raised when a FreeVA carrier cannot evaluate a product the check needs;
// checkers convert it into a not-evaluable verdict instead of passing.
struct NotEvaluable : std::runtime_error {
    explicit NotEvaluable(const std::string& what) : std::runtime_error(what) {}
};

// Non-unital SUSY vertex algebra candidate: an LCA-type bracket table plus an
// even multiplication table. Finite carriers are fully decidable; free
// carriers evaluate products through the generator table and an optional
// closure table keyed by (nabla word, generator) pairs.
class VAStructure {
public:
    VAStructure() = default;
    VAStructure(LCAStructure lca) : lca_(std::move(lca)) {}

    LCAStructure& lca() { return lca_; }
    const LCAStructure& lca() const { return lca_; }
    const CarrierPtr& V() const { return lca_.V(); }
    int N() const { return lca_.N(); }
    int nbar() const { return lca_.nbar(); }
    Flavor flavor() const { return lca_.flavor(); }

    void set_mu(int ga, int gb, MElem value);  // value over a 0-var context
    const MElem* mu_entry(int ga, int gb) const;

    struct WordKey {
        int t_exp;
        uint32_t sset;
        int gen;
        bool operator<(const WordKey& o) const
        {
            return std::tie(t_exp, sset, gen) < std::tie(o.t_exp, o.sset, o.gen);
        }
    };
    void set_closure(const WordKey& a, const WordKey& b, MElem value);

    // declares the multiplication present with absent entries meaning zero
    void enable_mu() { has_mu_ = true; }
    bool has_mu() const { return has_mu_; }

    // mu of two bare module elements; throws NotEvaluable on a free carrier
    // when the needed entry is absent.
    MElem mu_elems(const MElem& x, const MElem& y) const;

    CtxPtr ctx0() const { return make_context(flavor(), N(), {}, true); }
    MElem gen_elem(int g) const { return MElem::gen(ctx0(), V(), g); }

private:
    LCAStructure lca_;
    bool has_mu_ = false;
    std::map<std::pair<int, int>, MElem> mu_;
    std::map<std::pair<WordKey, WordKey>, MElem> closure_;
};

// an even bilinear pairing of bare module elements extended to module
// polynomials, pulling Lambda coefficients with Koszul signs
MElem dot_poly_poly(const DotFn& dot, const CarrierPtr& out_carrier, const MElem& P,
                    const MElem& Q);

// products against module polynomials, pulling Lambda coefficients with the
// Koszul signs of the even map mu
MElem mu_poly_poly(const VAStructure& S, const MElem& P, const MElem& Q);

// (int_F^G dLambda a) x for a general even pairing, consuming variable `var`
// of x; F,G even bounds.
MElem op_int_dLambda_gen(const DotFn& dot, const MElem& a, const Poly& F, const Poly& G,
                         const MElem& x, int var);

// (int_F^G dLambda a) x, consuming variable `var` of x; F,G even bounds.
MElem op_int_dLambda(const VAStructure& S, const MElem& a, const Poly& F, const Poly& G,
                     const MElem& x, int var);

// (int_{lo}^{hi} dlambda b) x: lambda-only antiderivative pairing, bounds may
// contain lambda_var itself; theta content of x is kept.
MElem op_int_dlambda(const VAStructure& S, const MElem& b, const Poly& lo, const Poly& hi,
                     const MElem& x, int var);

// (e^{nabla . d_Lambda} a) x on a one-variable x
MElem op_exp_nabla(const VAStructure& S, const MElem& a, const MElem& x, int var);

// integral of the Lambda-bracket: the unique F with d_lambda F = [a_L b],
// Res(lambda^{-1} F) = ab and the S^i residue conditions.
MElem integral_bracket(const VAStructure& S, const MElem& a, const MElem& b, const CtxPtr& out,
                       int var);
// same with both slots polynomial (coefficients pulled)
MElem integral_bracket_poly(const VAStructure& S, const MElem& P, const MElem& Q,
                            const CtxPtr& out, int var);

// --- axiom checkers ---------------------------------------------------------

CheckResult check_mu_even(const VAStructure& S);
CheckResult check_derivations(const VAStructure& S);       // eq VA:der / KVA:der
CheckResult check_quasi_commutativity(const VAStructure& S);
CheckResult check_quasi_associativity(const VAStructure& S);
CheckResult check_wick(const VAStructure& S);
CheckReport check_va_axioms(const VAStructure& S);  // lca axioms + the four above

CheckResult check_right_wick(const VAStructure& S);
CheckResult check_lsym(const VAStructure& S);
CheckResult check_skecom_integral_form(const VAStructure& S);  // eq W:skecom
CheckResult check_jqas_integral_form(const VAStructure& S);    // eq W:Jqas
CheckReport check_integral_forms(const VAStructure& S);

// --- Maurer-Cartan certificate ----------------------------------------------

struct McCertificate {
    bool pre_ok = false;       // sesquilinearity/derivations + skew/qcomm
    bool jqas_ok = false;      // arity-3 evaluation at z13^{-1} z23^{-1}
    bool ladder_ok = false;    // residue ladder up to n_max
    int n_max = 0;
    std::string failing_line;  // empty when everything vanished
    bool value() const { return pre_ok && jqas_ok && ladder_ok; }
};

// the ladder component F_n(a,b,c) (lam-bracket calculus closed form)
MElem mc_ladder_component(const VAStructure& S, int ga, int gb, int gc, int n,
                          const CtxPtr& ctx1);

McCertificate mc_check_va_certificate(const VAStructure& S);
bool mc_check_va(const VAStructure& S);

// --- the chiral operad at arity 2 -------------------------------------------

// Values X(a x b x z_{1,2}^{-m} zeta_{1,2}^I) in the reduced one-variable
// presentation, generated from (beta, em) by the right D_2^T action. Finite
// carriers only.
class Pch2Element {
public:
    Pch2Element() = default;
    Pch2Element(CarrierPtr V, int shift, int par, int max_pole);

    const CarrierPtr& V() const { return V_; }
    int shift() const { return shift_; }
    int par() const { return par_; }
    int max_pole() const { return max_pole_; }
    const CtxPtr& ctx1() const { return ctx1_; }

    // value table at (pole m, I): (a,b) -> MElem over ctx1
    void set_value(int m, IndexSet I, int ga, int gb, MElem v);
    const MElem& value(int m, IndexSet I, int ga, int gb) const;

private:
    CarrierPtr V_;
    int shift_ = 0, par_ = 1, max_pole_ = 4;
    CtxPtr ctx1_;
    std::map<std::tuple<int, uint32_t, int, int>, MElem> values_;
    mutable MElem zero_;
};

// beta/em from the structure with the theorem's sign prefactors, then the
// whole monomial table up to max_pole through the z- and zeta-ladders.
Pch2Element pch2_from_structure(const VAStructure& S, int max_pole = 4);

// invert: bracket and multiplication back from the element
VAStructure mc_to_va(const Pch2Element& X, const CtxPtr& ctx1);

// right action of one D_2^T generator on a reduced value
MElem pch2_right_action(const Pch2Element& X, const MElem& val, const DiffOp& op);

// evaluate at f = z_{1,2}^{-m} zeta_{1,2}^I for arbitrary stored m
MElem evaluate_pch2(const Pch2Element& X, int ga, int gb, int m, IndexSet I);

// D_2^T equivariance on all stored monomials; exact
CheckResult check_pch2_equivariance(const Pch2Element& X);

// vacuum check utility: a|0> = |0>a = a on the basis
CheckResult check_vacuum(const VAStructure& S, int vac);

}  // namespace svao
