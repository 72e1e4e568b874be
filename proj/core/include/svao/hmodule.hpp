#pragma once

#include "svao/context.hpp"
#include "svao/linalg.hpp"

#include <functional>
#include <optional>

namespace svao {

// Basis data for the coefficient module. Free carriers are free H-modules on
// named generators (nabla words stay formal); finite carriers are
// finite-dimensional superspaces with concrete matrices for T and S^i.
class Carrier {
public:
    Flavor flavor = Flavor::W;
    int N = 1;
    std::vector<std::string> names;
    std::vector<int> parities;
    bool finite = false;
    std::vector<Mat> nabla_mats;  // finite only: [T, S^1, .., S^N], column = image
    // free carriers: generators carrying the trivial H-action (central
    // elements of the central-extension encoding)
    std::vector<bool> central;

    int dim() const { return static_cast<int>(names.size()); }
    int parity(int g) const { return parities[g]; }
    bool is_central(int g) const { return !central.empty() && central[g]; }
    int index_of(const std::string& name) const;

    // Checks parity of T/S and the H_W / H_K relations on the matrices.
    void validate() const;

    Vec apply_T(const Vec& v) const;
    Vec apply_S(int i, const Vec& v) const;
};

using CarrierPtr = std::shared_ptr<const Carrier>;

CarrierPtr make_free_carrier(Flavor f, int N, std::vector<std::string> names,
                             std::vector<int> parities, std::vector<bool> central = {});
CarrierPtr make_finite_carrier(Flavor f, int N, std::vector<std::string> names,
                               std::vector<int> parities, std::vector<Mat> nabla_mats);

// Element of V[Lambda_1..Lambda_n] (n = ctx->n_vars(), possibly 0), V the
// carrier. Terms are (ring monomial, generator) -> Q; for free carriers the
// monomial may hold a formal nabla word acting on the generator, for finite
// carriers normalization evaluates nabla content through the matrices.
class MElem {
public:
    MElem() = default;
    MElem(CtxPtr ctx, CarrierPtr car) : ctx_(std::move(ctx)), car_(std::move(car)) {}

    static MElem gen(const CtxPtr& ctx, const CarrierPtr& car, int g, const Rat& c = Rat(1));

    const CtxPtr& ctx() const { return ctx_; }
    const CarrierPtr& carrier() const { return car_; }
    const std::map<std::pair<Mono, int>, Rat>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    void add_term(const Mono& m, int g, const Rat& c);
    void add_scaled(const MElem& o, const Rat& c);

    MElem operator+(const MElem& o) const;
    MElem operator-(const MElem& o) const;
    MElem operator-() const;
    MElem scaled(const Rat& c) const;
    bool operator==(const MElem& o) const { return t_ == o.t_; }

    // parity of a pure element; -1 if zero, throws if mixed and strict
    int parity_or(int dflt, bool strict = true) const;

    MElem normalized() const;  // finite carriers: evaluate nabla words

    std::string str() const;

private:
    CtxPtr ctx_;
    CarrierPtr car_;
    std::map<std::pair<Mono, int>, Rat> t_;
};

// --- basic algebra ---------------------------------------------------------

// left multiplication by a ring element of the same context
MElem mul_poly(const Poly& p, const MElem& x);
// action of an H-polynomial (T/S symbols only) on x, Koszul/Clifford signs
// through the ring product
MElem act_nabla(const Poly& h, const MElem& x);

// re-embed x into a context with more variables / nabla, matching names
MElem extend_to_ctx(const MElem& x, const CtxPtr& dst);

// substitute supervariable `var` by the affine image (context machinery)
MElem subst_var(const MElem& x, int var, const AffineImage& img, const CtxPtr& dst);

// Lemma-style reduction: substitute Lambda_var -> -sum(other vars) - nabla,
// target context drops the variable.
MElem reduce_nabla(const MElem& x, int var);
// Inverse presentation: nabla words become right multiplication by
// (-sum lambda_k, -sum theta_k^i) over all variables of dst.
MElem unreduce_nabla(const MElem& x, const CtxPtr& dst);

// --- integrals, residues, coefficients -------------------------------------

// int_F^G dLambda_var: Lambda^{m|I} v -> delta_{I,[N]}/(m+1) (G^{m+1}-F^{m+1}) v
MElem definite_integral(const MElem& x, int var, const Poly& F, const Poly& G);
// lambda-only antiderivative evaluated between even bounds (theta untouched);
// bounds may involve lambda_var itself.
MElem integrate_lambda(const MElem& x, int var, const Poly& F, const Poly& G);
MElem antideriv_lambda(const MElem& x, int var);
MElem eval_lambda_at(const MElem& x, int var, const Poly& value);

// Res_Lambda(lambda^{-1} -): coefficient of Lambda_var^{0|[N]}
MElem residue(const MElem& x, int var);
// coefficient of Lambda_var^{m|I} (variable block pulled to the front)
MElem coeff_of(const MElem& x, int var, int m, IndexSet I);
// max lambda-exponent of var
int lambda_degree(const MElem& x, int var);

MElem deriv_lambda(const MElem& x, int var);
MElem deriv_theta(const MElem& x, int var, int i);

// e^{nabla . d/dLambda_var} as the finite Taylor sum
MElem exp_nabla_partial(const MElem& x, int var);

// --- free-module quotient ---------------------------------------------------

// M/nabla M of a free carrier: classes of generators; projection kills
// positive nabla words. x must live in a 0-variable context.
MElem mod_nabla_project(const MElem& x);

// split of a monomial into its Lambda-only part and its nabla word
struct NablaSplit {
    Mono lam;       // nabla content removed
    int t_exp;      // T power
    uint32_t sset;  // S indices, bit i-1 = S^i present
    int word_parity;
};
NablaSplit split_nabla(const SuperContext& ctx, const Mono& m);

}  // namespace svao
