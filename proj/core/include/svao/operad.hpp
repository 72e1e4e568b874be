#pragma once

#include "svao/linalg.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace svao {

using Perm = std::vector<int>;  // perm[k] = sigma(k), 0-based

Perm perm_identity(int n);
Perm perm_inverse(const Perm& p);
Perm perm_compose(const Perm& a, const Perm& b);  // (a*b)(k) = a(b(k))
std::vector<Perm> all_perms(int n);

// (k,l)-shuffles in S_{k+l}: ascending on the first k and on the last l slots.
std::vector<Perm> shuffles(int k, int l);

// Finite-dimensional superspace with a chosen homogeneous basis.
struct SuperSpace {
    std::vector<int> parities;
    int dim() const { return static_cast<int>(parities.size()); }
    int parity(int i) const { return parities[i]; }
};

// Element of Hom(V^{tensor n}, V): coefficients on basis input tuples.
// The right S_n action permutes inputs with the Koszul sign of the left
// action on V^{tensor n}.
class EndElem {
public:
    EndElem() = default;
    EndElem(SuperSpace space, int arity, int parity)
        : space_(std::move(space)), arity_(arity), parity_(parity)
    {
    }

    const SuperSpace& space() const { return space_; }
    int arity() const { return arity_; }
    int parity() const { return parity_; }
    bool is_zero() const { return t_.empty(); }

    void add(const std::vector<int>& inputs, int output, const Rat& c);
    Rat coeff(const std::vector<int>& inputs, int output) const;
    // value on a basis tuple as a coefficient vector
    Vec value(const std::vector<int>& inputs) const;

    EndElem operator+(const EndElem& o) const;
    EndElem operator-(const EndElem& o) const;
    EndElem scaled(const Rat& c) const;
    bool operator==(const EndElem& o) const { return t_ == o.t_; }

private:
    SuperSpace space_;
    int arity_ = 0;
    int parity_ = 0;
    std::map<std::pair<std::vector<int>, int>, Rat> t_;
};

EndElem end_unit(const SuperSpace& s);

// Koszul sign of permuting a tuple of parities: prod over inversions.
int koszul_sign(const Perm& sigma, const std::vector<int>& parities);

// right action f^sigma
EndElem sym_action(const EndElem& f, const Perm& sigma);

// infinitesimal composition f o_i g (i is 1-based per the composition maps)
EndElem infinitesimal_compose(const EndElem& f, int i, const EndElem& g);

// full composition gamma_nu(f (tensor) g_1 .. g_m) with the block sign
EndElem gamma_compose(const EndElem& f, const std::vector<EndElem>& gs);

// block permutation sigma_nu in S_n for sigma in S_m and nu = (n_1..n_m)
Perm block_perm(const Perm& sigma, const std::vector<int>& nu);

// f box g = sum over (m+1, n)-shuffles of (f o_1 g)^{sigma^{-1}},
// f of arity n+1, g of arity m+1 (both S-invariant).
EndElem box(const EndElem& f, const EndElem& g);

// symmetrize onto L^{arity-1}: average of f^sigma over S_arity
EndElem symmetrize(const EndElem& f);
bool is_sym_invariant(const EndElem& f);

// Maurer-Cartan check for an odd S_2-invariant arity-2 element of the
// endomorphism operad of Pi V: true iff c box c = 0.
bool mc_check_end(const EndElem& c);

// Independent oracle: translate c (an element over Pi V) to the bracket
// beta(a,b) = (-1)^{p_V(a)} c(a,b) on V and check the super Jacobi identity
// over all basis triples. `shifted_parities` are the parities IN Pi V.
bool jacobi_oracle(const EndElem& c);

}  // namespace svao
