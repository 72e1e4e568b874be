#include "svao/operad.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace svao {

Perm perm_identity(int n)
{
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Perm perm_inverse(const Perm& p)
{
    Perm q(p.size());
    for (size_t i = 0; i < p.size(); ++i)
        q[p[i]] = static_cast<int>(i);
    return q;
}

Perm perm_compose(const Perm& a, const Perm& b)
{
    Perm c(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        c[i] = a[b[i]];
    return c;
}

std::vector<Perm> all_perms(int n)
{
    Perm p = perm_identity(n);
    std::vector<Perm> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::vector<Perm> shuffles(int k, int l)
{
    // choose the image set of the first k slots; both runs ascending
    std::vector<Perm> out;
    int n = k + l;
    std::vector<int> comb(k);
    std::iota(comb.begin(), comb.end(), 0);
    auto emit = [&]() {
        Perm p(n);
        std::vector<bool> used(n, false);
        for (int i = 0; i < k; ++i) {
            p[i] = comb[i];
            used[comb[i]] = true;
        }
        int pos = k;
        for (int v = 0; v < n; ++v)
            if (!used[v])
                p[pos++] = v;
        out.push_back(p);
    };
    if (k == 0 || l == 0) {
        out.push_back(perm_identity(n));
        return out;
    }
    while (true) {
        emit();
        int i = k - 1;
        while (i >= 0 && comb[i] == n - k + i)
            --i;
        if (i < 0)
            break;
        ++comb[i];
        for (int j = i + 1; j < k; ++j)
            comb[j] = comb[j - 1] + 1;
    }
    return out;
}

void EndElem::add(const std::vector<int>& inputs, int output, const Rat& c)
{
    if (svao::is_zero(c))
        return;
    auto key = std::make_pair(inputs, output);
    auto it = t_.find(key);
    if (it == t_.end()) {
        t_.emplace(key, c);
    } else {
        it->second += c;
        if (svao::is_zero(it->second))
            t_.erase(it);
    }
}

Rat EndElem::coeff(const std::vector<int>& inputs, int output) const
{
    auto it = t_.find(std::make_pair(inputs, output));
    return it == t_.end() ? Rat(0) : it->second;
}

Vec EndElem::value(const std::vector<int>& inputs) const
{
    Vec v(space_.dim(), Rat(0));
    for (int o = 0; o < space_.dim(); ++o)
        v[o] = coeff(inputs, o);
    return v;
}

EndElem EndElem::operator+(const EndElem& o) const
{
    EndElem r = *this;
    for (auto& [k, c] : o.t_)
        r.add(k.first, k.second, c);
    return r;
}

EndElem EndElem::operator-(const EndElem& o) const
{
    EndElem r = *this;
    for (auto& [k, c] : o.t_)
        r.add(k.first, k.second, -c);
    return r;
}

EndElem EndElem::scaled(const Rat& c) const
{
    EndElem r(space_, arity_, parity_);
    if (svao::is_zero(c))
        return r;
    for (auto& [k, v] : t_)
        r.t_[k] = v * c;
    return r;
}

EndElem end_unit(const SuperSpace& s)
{
    EndElem u(s, 1, 0);
    for (int i = 0; i < s.dim(); ++i)
        u.add({i}, i, Rat(1));
    return u;
}

int koszul_sign(const Perm& sigma, const std::vector<int>& parities)
{
    int n = static_cast<int>(sigma.size());
    int sign = 1;
    for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l)
            if (sigma[k] > sigma[l] && parities[k] && parities[l])
                sign = -sign;
    return sign;
}

EndElem sym_action(const EndElem& f, const Perm& sigma)
{
    int n = f.arity();
    if (static_cast<int>(sigma.size()) != n)
        throw std::invalid_argument("sym_action: arity mismatch");
    const auto& sp = f.space();
    EndElem r(sp, n, f.parity());
    Perm inv = perm_inverse(sigma);
    std::vector<int> in(n, 0);
    // enumerate all input tuples
    while (true) {
        std::vector<int> permuted(n);
        for (int k = 0; k < n; ++k)
            permuted[k] = in[inv[k]];
        std::vector<int> pars(n);
        for (int k = 0; k < n; ++k)
            pars[k] = sp.parity(in[k]);
        int sgn = koszul_sign(sigma, pars);
        for (int o = 0; o < sp.dim(); ++o) {
            Rat c = f.coeff(permuted, o);
            if (!is_zero(c))
                r.add(in, o, sgn > 0 ? c : -c);
        }
        int k = n - 1;
        while (k >= 0 && in[k] == sp.dim() - 1)
            in[k--] = 0;
        if (k < 0)
            break;
        ++in[k];
    }
    return r;
}

EndElem gamma_compose(const EndElem& f, const std::vector<EndElem>& gs)
{
    const auto& sp = f.space();
    int m = f.arity();
    if (static_cast<int>(gs.size()) != m)
        throw std::invalid_argument("gamma_compose: need arity(f) arguments");
    int n = 0;
    for (auto& g : gs)
        n += g.arity();
    int par = f.parity();
    for (auto& g : gs)
        par = (par + g.parity()) & 1;
    EndElem r(sp, n, par);
    std::vector<int> in(n, 0);
    while (true) {
        // block parities and the odot sign
        int sign = 1;
        {
            int off = 0;
            std::vector<int> wpar(m, 0);
            for (int j = 0; j < m; ++j) {
                for (int k = 0; k < gs[j].arity(); ++k)
                    wpar[j] = (wpar[j] + sp.parity(in[off + k])) & 1;
                off += gs[j].arity();
            }
            for (int i = 0; i < m; ++i)
                for (int j = i + 1; j < m; ++j)
                    if (wpar[i] && gs[j].parity())
                        sign = -sign;
        }
        // expand g_j(w_j) over the basis and feed into f
        std::vector<Vec> vals(m);
        {
            int off = 0;
            for (int j = 0; j < m; ++j) {
                std::vector<int> block(in.begin() + off, in.begin() + off + gs[j].arity());
                vals[j] = gs[j].value(block);
                off += gs[j].arity();
            }
        }
        std::vector<int> mid(m, 0);
        while (true) {
            Rat c(sign);
            for (int j = 0; j < m; ++j)
                c *= vals[j][mid[j]];
            if (!is_zero(c))
                for (int o = 0; o < sp.dim(); ++o) {
                    Rat fc = f.coeff(mid, o);
                    if (!is_zero(fc))
                        r.add(in, o, c * fc);
                }
            int k = m - 1;
            while (k >= 0 && mid[k] == sp.dim() - 1)
                mid[k--] = 0;
            if (k < 0)
                break;
            ++mid[k];
        }
        int k = n - 1;
        while (k >= 0 && in[k] == sp.dim() - 1)
            in[k--] = 0;
        if (k < 0)
            break;
        ++in[k];
    }
    return r;
}

EndElem infinitesimal_compose(const EndElem& f, int i, const EndElem& g)
{
    if (i < 1 || i > f.arity())
        throw std::invalid_argument("infinitesimal_compose: position out of range");
    std::vector<EndElem> gs;
    for (int j = 1; j <= f.arity(); ++j)
        gs.push_back(j == i ? g : end_unit(f.space()));
    return gamma_compose(f, gs);
}

Perm block_perm(const Perm& sigma, const std::vector<int>& nu)
{
    int m = static_cast<int>(nu.size());
    int n = 0;
    for (int x : nu)
        n += x;
    Perm snu(n);
    // offsets of sigma nu = (n_{sigma^{-1}(1)}, ...)
    std::vector<int> offs(m + 1, 0);
    Perm inv = perm_inverse(sigma);
    for (int j = 0; j < m; ++j)
        offs[j + 1] = offs[j] + nu[inv[j]];
    int k = 0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < nu[i]; ++j, ++k)
            snu[k] = offs[sigma[i]] + j;
    return snu;
}

EndElem box(const EndElem& f, const EndElem& g)
{
    int n = f.arity() - 1;
    int m = g.arity() - 1;
    EndElem comp = infinitesimal_compose(f, 1, g);
    EndElem r(f.space(), comp.arity(), comp.parity());
    for (auto& s : shuffles(m + 1, n))
        r = r + sym_action(comp, perm_inverse(s));
    return r;
}

EndElem symmetrize(const EndElem& f)
{
    EndElem r(f.space(), f.arity(), f.parity());
    auto perms = all_perms(f.arity());
    for (auto& s : perms)
        r = r + sym_action(f, s);
    return r.scaled(rat(1, static_cast<long>(perms.size())));
}

bool is_sym_invariant(const EndElem& f)
{
    for (auto& s : all_perms(f.arity()))
        if (!(sym_action(f, s) == f))
            return false;
    return true;
}

bool mc_check_end(const EndElem& c)
{
    return box(c, c).is_zero();
}

bool jacobi_oracle(const EndElem& c)
{
    // beta(a,b) = (-1)^{p_V(a)} c(a x b), p_V = parity in V = shifted + 1
    const auto& sp = c.space();
    int d = sp.dim();
    auto pV = [&](int a) { return (sp.parity(a) + 1) & 1; };
    auto beta = [&](int a, int b) {
        Vec v = c.value({a, b});
        if (pV(a))
            for (auto& x : v)
                x = -x;
        return v;
    };
    auto beta_vec = [&](const Vec& va, const Vec& vb) {
        Vec out(d, Rat(0));
        for (int a = 0; a < d; ++a) {
            if (is_zero(va[a]))
                continue;
            for (int b = 0; b < d; ++b) {
                if (is_zero(vb[b]))
                    continue;
                Vec w = beta(a, b);
                for (int o = 0; o < d; ++o)
                    out[o] += va[a] * vb[b] * w[o];
            }
        }
        return out;
    };
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int cc = 0; cc < d; ++cc) {
                Vec ea(d, Rat(0)), eb(d, Rat(0)), ec(d, Rat(0));
                ea[a] = 1;
                eb[b] = 1;
                ec[cc] = 1;
                // [a,[b,c]] = [[a,b],c] + (-1)^{p(a)p(b)} [b,[a,c]]
                Vec lhs = beta_vec(ea, beta_vec(eb, ec));
                Vec t1 = beta_vec(beta_vec(ea, eb), ec);
                Vec t2 = beta_vec(eb, beta_vec(ea, ec));
                int s = (pV(a) && pV(b)) ? -1 : 1;
                for (int o = 0; o < d; ++o) {
                    Rat defect = lhs[o] - t1[o] - Rat(s) * t2[o];
                    if (!is_zero(defect))
                        return false;
                }
            }
    return true;
}

}  // namespace svao
