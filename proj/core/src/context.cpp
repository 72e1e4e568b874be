#include "svao/context.hpp"

#include <algorithm>

namespace svao {

int popcount(IndexSet s) { return __builtin_popcount(s); }

IndexSet full_set(int N) { return N >= 32 ? ~0u : ((1u << N) - 1); }

int sigma(IndexSet I, IndexSet J)
{
    if (I & J)
        return 0;
    // Count inversions: pairs (i in I, j in J) with i > j.
    int inv = 0;
    for (int i = 0; i < 32; ++i) {
        if (!(I & (1u << i)))
            continue;
        inv += popcount(J & ((1u << i) - 1));
    }
    return (inv & 1) ? -1 : 1;
}

int sigma_compl(IndexSet I, int N)
{
    return sigma(I, full_set(N) & ~I);
}

SuperContext::SuperContext(Flavor f, int n, std::vector<std::string> vs, bool nab)
    : flavor(f), N(n), vars(std::move(vs)), has_nabla(nab)
{
    if (N < 1)
        throw std::invalid_argument("SuperContext: N >= 1 required");
    {
        auto sorted = vars;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("SuperContext: duplicate variable identifier");
    }
    auto tab = std::make_shared<SymbolTable>();
    for (auto& v : vars)
        tab->add_even("l" + v);
    if (has_nabla)
        tab->add_even("T");
    for (auto& v : vars)
        for (int i = 1; i <= N; ++i)
            tab->add_odd("t" + v + "^" + std::to_string(i));
    if (has_nabla)
        for (int i = 1; i <= N; ++i)
            tab->add_odd("S" + std::to_string(i));
    tab->freeze();
    if (flavor == Flavor::K) {
        for (int v = 0; v < n_vars(); ++v)
            for (int i = 1; i <= N; ++i)
                tab->set_form(v * N + (i - 1), v * N + (i - 1), -2, v);
        if (has_nabla) {
            int soff = n_vars() * N;
            for (int i = 1; i <= N; ++i) {
                tab->set_form(soff + (i - 1), soff + (i - 1), 2, n_vars());
                for (int v = 0; v < n_vars(); ++v)
                    tab->set_form(soff + (i - 1), v * N + (i - 1), 2, v);
            }
        }
    }
    tab_ = tab;
}

Poly SuperContext::theta_set(int v, IndexSet I) const
{
    Poly r = one();
    for (int i = 1; i <= N; ++i)
        if (I & (1u << (i - 1)))
            r = r * theta(v, i);
    return r;
}

Poly SuperContext::monomial(int v, int m, IndexSet I) const
{
    return lambda(v).pow(m) * theta_set(v, I);
}

SuperContext::VarSplit SuperContext::split_var(const Mono& mono, int v) const
{
    VarSplit s;
    s.m = mono.ev[lambda_id(v)];
    s.I = 0;
    uint32_t vbits = 0;
    for (int i = 1; i <= N; ++i) {
        uint32_t bit = 1u << theta_id(v, i);
        if (mono.odd & bit) {
            s.I |= 1u << (i - 1);
            vbits |= bit;
        }
    }
    // Koszul sign for moving the (ascending) theta_v word to the front, past
    // all lower odd symbols not in the block. Crossings with distinct odd
    // symbols are strict anticommutations in both flavors.
    int crossings = 0;
    for (int b = 0; b < 32; ++b) {
        if (!(vbits & (1u << b)))
            continue;
        crossings += __builtin_popcount(mono.odd & ~vbits & ((1u << b) - 1));
    }
    s.sign = (crossings & 1) ? -1 : 1;
    s.rest = mono;
    s.rest.ev[lambda_id(v)] = 0;
    s.rest.odd &= ~vbits;
    return s;
}

bool SuperContext::same(const SuperContext& o) const
{
    return flavor == o.flavor && N == o.N && vars == o.vars && has_nabla == o.has_nabla;
}

std::string SuperContext::render_mono(const Mono& m) const
{
    std::vector<std::string> parts;
    for (int v = 0; v < n_vars(); ++v) {
        if (m.ev[lambda_id(v)] > 0) {
            std::string f = "l" + vars[v];
            if (m.ev[lambda_id(v)] > 1)
                f += "^" + std::to_string(m.ev[lambda_id(v)]);
            parts.push_back(f);
        }
        std::string idx;
        for (int i = 1; i <= N; ++i)
            if (m.odd & (1u << theta_id(v, i)))
                idx += (idx.empty() ? "" : ",") + std::to_string(i);
        if (!idx.empty())
            parts.push_back("t" + vars[v] + "{" + idx + "}");
    }
    if (has_nabla) {
        if (m.ev[T_id()] > 0) {
            std::string f = "T";
            if (m.ev[T_id()] > 1)
                f += "^" + std::to_string(m.ev[T_id()]);
            parts.push_back(f);
        }
        for (int i = 1; i <= N; ++i)
            if (m.odd & (1u << S_id(i)))
                parts.push_back("S" + std::to_string(i));
    }
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i)
        out += (i ? "*" : "") + parts[i];
    return out;
}

std::string SuperContext::render(const Poly& p) const
{
    if (p.is_zero())
        return "0";
    std::string out;
    bool first = true;
    for (auto& [m, c] : p.terms()) {
        std::string cs = rat_str(c);
        bool neg = cs[0] == '-';
        std::string abs = neg ? cs.substr(1) : cs;
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        std::string body = render_mono(m);
        if (body.empty())
            out += abs;
        else if (abs == "1")
            out += body;
        else
            out += abs + "*" + body;
        first = false;
    }
    return out;
}

CtxPtr make_context(Flavor flavor, int N, std::vector<std::string> vars, bool nabla)
{
    // contexts are interned so that structurally equal ones share one symbol
    // table (ring operations check table identity by pointer)
    static std::map<std::tuple<Flavor, int, std::vector<std::string>, bool>,
                    std::shared_ptr<const SuperContext>>
        cache;
    auto key = std::make_tuple(flavor, N, vars, nabla);
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;
    auto ctx = std::make_shared<SuperContext>(flavor, N, std::move(vars), nabla);
    cache.emplace(std::move(key), ctx);
    return ctx;
}

Poly substitute_affine(const SuperContext& src, const Poly& p, int v,
                       const AffineImage& img, const CtxPtr& dst)
{
    {
        std::vector<int> seen;
        for (auto& [c, w] : img.parts) {
            (void)c;
            if (std::find(seen.begin(), seen.end(), w) != seen.end())
                throw std::invalid_argument("substitute_affine: repeated variable in image");
            seen.push_back(w);
        }
    }
    auto var_in_dst = [&](const std::string& name) {
        for (int i = 0; i < dst->n_vars(); ++i)
            if (dst->vars[i] == name)
                return i;
        throw std::invalid_argument("substitute_affine: variable missing in target: " + name);
    };

    std::vector<Poly> ev_img(src.table()->n_even(), Poly::zero(dst->table()));
    std::vector<Poly> od_img(src.table()->n_odd(), Poly::zero(dst->table()));
    for (int w = 0; w < src.n_vars(); ++w) {
        if (w == v)
            continue;
        int dw = var_in_dst(src.vars[w]);
        ev_img[src.lambda_id(w)] = dst->lambda(dw);
        for (int i = 1; i <= src.N; ++i)
            od_img[src.theta_id(w, i)] = dst->theta(dw, i);
    }
    if (src.has_nabla) {
        if (!dst->has_nabla)
            throw std::invalid_argument("substitute_affine: target lacks nabla");
        ev_img[src.T_id()] = dst->T();
        for (int i = 1; i <= src.N; ++i)
            od_img[src.S_id(i)] = dst->S(i);
    }
    Poly lam = Poly::zero(dst->table());
    std::vector<Poly> ths(src.N + 1, Poly::zero(dst->table()));
    for (auto& [c, w] : img.parts) {
        Rat rc(c);
        if (w == -1) {
            if (!dst->has_nabla)
                throw std::invalid_argument("substitute_affine: nabla image needs nabla context");
            lam = lam + dst->T() * rc;
            for (int i = 1; i <= src.N; ++i)
                ths[i] = ths[i] + dst->S(i) * rc;
        } else {
            if (w < 0 || w >= dst->n_vars())
                throw std::invalid_argument("substitute_affine: image variable out of range");
            lam = lam + dst->lambda(w) * rc;
            for (int i = 1; i <= src.N; ++i)
                ths[i] = ths[i] + dst->theta(w, i) * rc;
        }
    }
    ev_img[src.lambda_id(v)] = lam;
    for (int i = 1; i <= src.N; ++i)
        od_img[src.theta_id(v, i)] = ths[i];
    return p.substitute(dst->table(), ev_img, od_img);
}

}  // namespace svao
