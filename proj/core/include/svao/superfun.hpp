#pragma once

#include "svao/context.hpp"

#include <map>

namespace svao {

// Coordinates Z_k = (z_k, zeta_k^1..zeta_k^N), k in [n]. The coordinate ring
// itself always has W-type commutation; the flavor only changes the meaning
// of z_{k,l} and the odd derivative used by the D^T generators.
class FunContext {
public:
    FunContext(Flavor flavor, int N, int n);

    Flavor flavor;
    int N, n;

    const TablePtr& table() const { return tab_; }
    int z_id(int k) const { return k - 1; }                          // k in [n]
    int zeta_id(int k, int i) const { return (k - 1) * N + i - 1; }  // odd id
    Poly z(int k) const { return Poly::even_gen(tab_, z_id(k)); }
    Poly zeta(int k, int i) const { return Poly::odd_gen(tab_, zeta_id(k, i)); }
    Poly one() const { return Poly::one(tab_); }

    // z_{k,l}: z_k - z_l in W flavor, z_k - z_l - sum_i zeta_k^i zeta_l^i in K
    Poly zdiff(int k, int l) const;
    // zeta_{k,l}^i = zeta_k^i - zeta_l^i
    Poly zetadiff(int k, int l, int i) const;
    // bare even difference z_k - z_l (the localized element in both flavors)
    Poly bare_diff(int k, int l) const;

private:
    TablePtr tab_;
};

using FunCtxPtr = std::shared_ptr<const FunContext>;
FunCtxPtr make_fun_context(Flavor flavor, int N, int n);

// Element of O_n^*: numerator over a monomial in the even differences.
class RSF {
public:
    RSF() = default;
    RSF(FunCtxPtr ctx, Poly num, std::map<std::pair<int, int>, int> den = {});

    static RSF zero(const FunCtxPtr& ctx) { return RSF(ctx, Poly::zero(ctx->table())); }
    static RSF one(const FunCtxPtr& ctx) { return RSF(ctx, Poly::one(ctx->table())); }
    static RSF from_poly(const FunCtxPtr& ctx, Poly p) { return RSF(ctx, std::move(p)); }

    const FunCtxPtr& ctx() const { return ctx_; }
    const Poly& num() const { return num_; }
    const std::map<std::pair<int, int>, int>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RSF operator+(const RSF& o) const;
    RSF operator-(const RSF& o) const;
    RSF operator*(const RSF& o) const;
    RSF operator*(const Rat& c) const;
    RSF operator-() const { return *this * Rat(-1); }

    bool equals(const RSF& o) const;

    std::string str() const;

private:
    FunCtxPtr ctx_;
    Poly num_;
    std::map<std::pair<int, int>, int> den_;  // (k,l) k<l -> power >= 1

    void reduce();
};

// z_{k,l}, z_{k,l}^{-1} or zeta_{k,l}^i as canonical elements of O_n^*.
enum class DiffKind { ZDiff, ZDiffInv, ZetaDiff };
RSF inject_difference(const FunCtxPtr& ctx, DiffKind kind, int k, int l, int i = 0);

// Derivatives (quotient rule on the canonical form). d_zeta is the plain odd
// partial; D_zeta = d_zeta + zeta d_z is the K-flavor covariant derivative.
RSF deriv_z(const RSF& f, int k);
RSF deriv_zeta(const RSF& f, int k, int i);
RSF deriv_D_zeta(const RSF& f, int k, int i);

// Translation invariance: kernel of the flavor's translation operators.
// W: sum_k d_{z_k} and sum_k d_{zeta_k^i}; K: sum_k d_{z_k} and the SUSY
// translations sum_k (d_{zeta_k^i} - zeta_k^i d_{z_k}).
bool is_translation_invariant(const RSF& f);

// One generator of D_n^T.
struct DiffOp {
    enum class Tag { MulZDiff, MulZetaDiff, DZ, DZeta } tag;
    int k = 0, l = 0, i = 0;
};
using DiffOpWord = std::vector<DiffOp>;

// Left-to-right composition of the word's generators; DZeta means d_zeta in
// W flavor and D_zeta in K flavor.
RSF apply_diffop(const RSF& f, const DiffOpWord& w);

// exact division attempt of p by (z_k - z_l); false if not divisible
bool divide_by_bare_diff(const FunContext& ctx, const Poly& p, int k, int l, Poly& quot);

}  // namespace svao
