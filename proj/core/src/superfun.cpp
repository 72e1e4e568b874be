#include "svao/superfun.hpp"

#include <sstream>

namespace svao {

FunContext::FunContext(Flavor f, int N_, int n_) : flavor(f), N(N_), n(n_)
{
    auto tab = std::make_shared<SymbolTable>();
    for (int k = 1; k <= n; ++k)
        tab->add_even("z" + std::to_string(k));
    for (int k = 1; k <= n; ++k)
        for (int i = 1; i <= N; ++i)
            tab->add_odd("c" + std::to_string(k) + "^" + std::to_string(i));
    tab->freeze();
    tab_ = tab;
}

Poly FunContext::zdiff(int k, int l) const
{
    Poly p = z(k) - z(l);
    if (flavor == Flavor::K)
        for (int i = 1; i <= N; ++i)
            p = p - zeta(k, i) * zeta(l, i);
    return p;
}

Poly FunContext::zetadiff(int k, int l, int i) const
{
    return zeta(k, i) - zeta(l, i);
}

Poly FunContext::bare_diff(int k, int l) const
{
    return z(k) - z(l);
}

FunCtxPtr make_fun_context(Flavor flavor, int N, int n)
{
    return std::make_shared<FunContext>(flavor, N, n);
}

bool divide_by_bare_diff(const FunContext& ctx, const Poly& p, int k, int l, Poly& quot)
{
    // P = (z_k - z_l) Q + P|_{z_k -> z_l}; divisible iff the remainder is 0.
    const auto& tab = ctx.table();
    std::vector<Poly> ev, od;
    for (int e = 0; e < tab->n_even(); ++e)
        ev.push_back(Poly::even_gen(tab, e));
    for (int o = 0; o < tab->n_odd(); ++o)
        od.push_back(Poly::odd_gen(tab, o));
    ev[ctx.z_id(k)] = ctx.z(l);
    Poly rem = p.substitute(tab, ev, od);
    if (!rem.is_zero())
        return false;
    // Q = sum_{j>=1} c_j (z_k^{j-1} + z_k^{j-2} z_l + .. + z_l^{j-1})
    quot = Poly::zero(tab);
    int zk = ctx.z_id(k), zl = ctx.z_id(l);
    for (auto& [m, c] : p.terms()) {
        int j = m.ev[zk];
        if (j == 0)
            continue;  // cancelled against other terms by rem == 0
        Mono base = m;
        base.ev[zk] = 0;
        for (int a = 0; a <= j - 1; ++a) {
            Mono mm = base;
            mm.ev[zk] += a;
            mm.ev[zl] += j - 1 - a;
            quot.add_term(mm, c);
        }
    }
    // terms with no z_k contribute -(their z_l expansion); handled implicitly:
    // correctness follows from p = (z_k-z_l) quot + rem when rem = 0; verify.
    return true;
}

RSF::RSF(FunCtxPtr ctx, Poly num, std::map<std::pair<int, int>, int> den)
    : ctx_(std::move(ctx)), num_(std::move(num)), den_(std::move(den))
{
    reduce();
}

void RSF::reduce()
{
    if (num_.is_zero()) {
        den_.clear();
        return;
    }
    bool progress = true;
    while (progress) {
        progress = false;
        for (auto it = den_.begin(); it != den_.end();) {
            Poly q(ctx_->table());
            if (divide_by_bare_diff(*ctx_, num_, it->first.first, it->first.second, q)) {
                num_ = q;
                if (--it->second == 0)
                    it = den_.erase(it);
                progress = true;
                break;
            }
            ++it;
        }
    }
}

RSF RSF::operator*(const Rat& c) const
{
    return RSF(ctx_, num_ * c, den_);
}

RSF RSF::operator*(const RSF& o) const
{
    auto den = den_;
    for (auto& [kl, p] : o.den_)
        den[kl] += p;
    return RSF(ctx_, num_ * o.num_, den);
}

RSF RSF::operator+(const RSF& o) const
{
    // common denominator
    auto den = den_;
    for (auto& [kl, p] : o.den_) {
        auto it = den.find(kl);
        if (it == den.end())
            den[kl] = p;
        else
            it->second = std::max(it->second, p);
    }
    auto scale = [&](const RSF& f) {
        Poly p = f.num_;
        for (auto& [kl, pw] : den) {
            int have = 0;
            auto it = f.den_.find(kl);
            if (it != f.den_.end())
                have = it->second;
            for (int j = have; j < pw; ++j)
                p = p * ctx_->bare_diff(kl.first, kl.second);
        }
        return p;
    };
    return RSF(ctx_, scale(*this) + scale(o), den);
}

RSF RSF::operator-(const RSF& o) const
{
    return *this + o * Rat(-1);
}

bool RSF::equals(const RSF& o) const
{
    return (*this - o).is_zero();
}

std::string RSF::str() const
{
    std::ostringstream os;
    os << num_.str();
    if (!den_.empty()) {
        os << " / ";
        bool first = true;
        for (auto& [kl, p] : den_) {
            if (!first)
                os << "*";
            os << "(z" << kl.first << "-z" << kl.second << ")";
            if (p > 1)
                os << "^" << p;
            first = false;
        }
    }
    return os.str();
}

RSF inject_difference(const FunCtxPtr& ctx, DiffKind kind, int k, int l, int i)
{
    if (!(k >= 1 && l >= 1 && k < l && l <= ctx->n))
        throw std::invalid_argument("inject_difference: need 1 <= k < l <= n");
    switch (kind) {
    case DiffKind::ZDiff:
        return RSF::from_poly(ctx, ctx->zdiff(k, l));
    case DiffKind::ZetaDiff:
        return RSF::from_poly(ctx, ctx->zetadiff(k, l, i));
    case DiffKind::ZDiffInv: {
        if (ctx->flavor == Flavor::W)
            return RSF(ctx, Poly::one(ctx->table()), {{{k, l}, 1}});
        // K: 1/(u - nu) = sum_j nu^j / u^{j+1}, nu = sum_i zeta_k^i zeta_l^i
        Poly nu = Poly::zero(ctx->table());
        for (int j = 1; j <= ctx->N; ++j)
            nu = nu + ctx->zeta(k, j) * ctx->zeta(l, j);
        Poly u = ctx->bare_diff(k, l);
        Poly numsum = Poly::zero(ctx->table());
        for (int j = 0; j <= ctx->N; ++j)
            numsum = numsum + nu.pow(j) * u.pow(ctx->N - j);
        return RSF(ctx, numsum, {{{k, l}, ctx->N + 1}});
    }
    }
    throw std::logic_error("inject_difference: bad kind");
}

RSF deriv_z(const RSF& f, int k)
{
    const auto& ctx = f.ctx();
    RSF r(ctx, f.num().deriv_even(ctx->z_id(k)), f.den());
    for (auto& [kl, p] : f.den()) {
        int s = 0;
        if (kl.first == k)
            s = -1;
        else if (kl.second == k)
            s = 1;
        if (s == 0)
            continue;
        auto den = f.den();
        den[kl] = p + 1;
        r = r + RSF(ctx, f.num() * Rat(s * p), den);
    }
    return r;
}

RSF deriv_zeta(const RSF& f, int k, int i)
{
    const auto& ctx = f.ctx();
    return RSF(ctx, f.num().deriv_odd(ctx->zeta_id(k, i)), f.den());
}

RSF deriv_D_zeta(const RSF& f, int k, int i)
{
    const auto& ctx = f.ctx();
    RSF zf = deriv_z(f, k);
    return deriv_zeta(f, k, i) + RSF::from_poly(ctx, ctx->zeta(k, i)) * zf;
}

bool is_translation_invariant(const RSF& f)
{
    const auto& ctx = f.ctx();
    RSF d0 = RSF::zero(ctx);
    for (int k = 1; k <= ctx->n; ++k)
        d0 = d0 + deriv_z(f, k);
    if (!d0.is_zero())
        return false;
    for (int i = 1; i <= ctx->N; ++i) {
        RSF di = RSF::zero(ctx);
        for (int k = 1; k <= ctx->n; ++k) {
            if (ctx->flavor == Flavor::W) {
                di = di + deriv_zeta(f, k, i);
            } else {
                // SUSY translation Q = d_zeta - zeta d_z
                di = di + deriv_zeta(f, k, i) -
                     RSF::from_poly(ctx, ctx->zeta(k, i)) * deriv_z(f, k);
            }
        }
        if (!di.is_zero())
            return false;
    }
    return true;
}

RSF apply_diffop(const RSF& f, const DiffOpWord& w)
{
    RSF cur = f;
    for (auto& op : w) {
        switch (op.tag) {
        case DiffOp::Tag::MulZDiff:
            cur = cur * RSF::from_poly(cur.ctx(), cur.ctx()->zdiff(op.k, op.l));
            break;
        case DiffOp::Tag::MulZetaDiff:
            cur = cur * RSF::from_poly(cur.ctx(), cur.ctx()->zetadiff(op.k, op.l, op.i));
            break;
        case DiffOp::Tag::DZ:
            cur = deriv_z(cur, op.k);
            break;
        case DiffOp::Tag::DZeta:
            cur = cur.ctx()->flavor == Flavor::W ? deriv_zeta(cur, op.k, op.i)
                                                 : deriv_D_zeta(cur, op.k, op.i);
            break;
        }
    }
    return cur;
}

}  // namespace svao
