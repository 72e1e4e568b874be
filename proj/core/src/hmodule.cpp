#include "svao/hmodule.hpp"

#include <sstream>

namespace svao {

int Carrier::index_of(const std::string& name) const
{
    for (int i = 0; i < dim(); ++i)
        if (names[i] == name)
            return i;
    throw std::invalid_argument("Carrier: unknown generator " + name);
}

Vec Carrier::apply_T(const Vec& v) const
{
    const Mat& m = nabla_mats[0];
    Vec r(dim(), Rat(0));
    for (int j = 0; j < dim(); ++j) {
        if (is_zero(v[j]))
            continue;
        for (int i = 0; i < dim(); ++i)
            r[i] += m[i][j] * v[j];
    }
    return r;
}

Vec Carrier::apply_S(int i, const Vec& v) const
{
    const Mat& m = nabla_mats[i];
    Vec r(dim(), Rat(0));
    for (int j = 0; j < dim(); ++j) {
        if (is_zero(v[j]))
            continue;
        for (int k = 0; k < dim(); ++k)
            r[k] += m[k][j] * v[j];
    }
    return r;
}

void Carrier::validate() const
{
    if (!finite)
        return;
    if (static_cast<int>(nabla_mats.size()) != N + 1)
        throw std::invalid_argument("Carrier: expected 1+N nabla matrices");
    int d = dim();
    for (auto& m : nabla_mats)
        if (static_cast<int>(m.size()) != d)
            throw std::invalid_argument("Carrier: matrix dimension mismatch");
    auto check_parity = [&](const Mat& m, int pm, const char* what) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (!is_zero(m[i][j]) && ((parities[i] + parities[j]) & 1) != pm)
                    throw std::invalid_argument(std::string("Carrier: ") + what +
                                                " violates parity");
    };
    check_parity(nabla_mats[0], 0, "T");
    for (int i = 1; i <= N; ++i)
        check_parity(nabla_mats[i], 1, "S");
    auto mulm = [&](const Mat& a, const Mat& b) {
        Mat r(d, Vec(d, Rat(0)));
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k)
                for (int j = 0; j < d; ++j)
                    r[i][j] += a[i][k] * b[k][j];
        return r;
    };
    auto eq = [&](const Mat& a, const Mat& b) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (a[i][j] != b[i][j])
                    return false;
        return true;
    };
    for (int i = 1; i <= N; ++i) {
        if (!eq(mulm(nabla_mats[0], nabla_mats[i]), mulm(nabla_mats[i], nabla_mats[0])))
            throw std::invalid_argument("Carrier: T S^i != S^i T");
        for (int j = i; j <= N; ++j) {
            Mat anti = mulm(nabla_mats[i], nabla_mats[j]);
            Mat ba = mulm(nabla_mats[j], nabla_mats[i]);
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c)
                    anti[r][c] += ba[r][c];
            Mat expect(d, Vec(d, Rat(0)));
            if (flavor == Flavor::K && i == j)
                for (int r = 0; r < d; ++r)
                    for (int c = 0; c < d; ++c)
                        expect[r][c] = Rat(2) * nabla_mats[0][r][c];
            if (!eq(anti, expect))
                throw std::invalid_argument("Carrier: S relations violated");
        }
    }
}

CarrierPtr make_free_carrier(Flavor f, int N, std::vector<std::string> names,
                             std::vector<int> parities, std::vector<bool> central)
{
    auto c = std::make_shared<Carrier>();
    c->flavor = f;
    c->N = N;
    c->names = std::move(names);
    c->parities = std::move(parities);
    c->finite = false;
    c->central = std::move(central);
    return c;
}

CarrierPtr make_finite_carrier(Flavor f, int N, std::vector<std::string> names,
                               std::vector<int> parities, std::vector<Mat> mats)
{
    auto c = std::make_shared<Carrier>();
    c->flavor = f;
    c->N = N;
    c->names = std::move(names);
    c->parities = std::move(parities);
    c->finite = true;
    c->nabla_mats = std::move(mats);
    c->validate();
    return c;
}

MElem MElem::gen(const CtxPtr& ctx, const CarrierPtr& car, int g, const Rat& c)
{
    MElem x(ctx, car);
    Mono m;
    m.ev.assign(ctx->table()->n_even(), 0);
    x.add_term(m, g, c);
    return x;
}

void MElem::add_term(const Mono& m, int g, const Rat& c)
{
    if (svao::is_zero(c))
        return;
    auto key = std::make_pair(m, g);
    auto it = t_.find(key);
    if (it == t_.end()) {
        t_.emplace(key, c);
    } else {
        it->second += c;
        if (svao::is_zero(it->second))
            t_.erase(it);
    }
}

void MElem::add_scaled(const MElem& o, const Rat& c)
{
    for (auto& [k, v] : o.t_)
        add_term(k.first, k.second, v * c);
}

MElem MElem::operator+(const MElem& o) const
{
    MElem r = *this;
    r.add_scaled(o, Rat(1));
    return r;
}

MElem MElem::operator-(const MElem& o) const
{
    MElem r = *this;
    r.add_scaled(o, Rat(-1));
    return r;
}

MElem MElem::operator-() const { return scaled(Rat(-1)); }

MElem MElem::scaled(const Rat& c) const
{
    MElem r(ctx_, car_);
    if (svao::is_zero(c))
        return r;
    for (auto& [k, v] : t_)
        r.t_[k] = v * c;
    return r;
}

int MElem::parity_or(int dflt, bool strict) const
{
    int par = -1;
    for (auto& [k, v] : t_) {
        (void)v;
        int p = (k.first.parity() + car_->parity(k.second)) & 1;
        if (par == -1)
            par = p;
        else if (par != p) {
            if (strict)
                throw std::logic_error("MElem: mixed parity where pure expected");
            return -2;
        }
    }
    return par == -1 ? dflt : par;
}

MElem MElem::normalized() const
{
    const auto& ctx = *ctx_;
    if (!car_->finite) {
        if (car_->central.empty() || !ctx.has_nabla)
            return *this;
        // central generators carry the trivial H-action: any nabla word on
        // them acts as zero
        MElem r(ctx_, car_);
        for (auto& [k, v] : t_) {
            if (car_->is_central(k.second)) {
                const Mono& m = k.first;
                bool word = m.ev[ctx.T_id()] > 0;
                for (int i = 1; i <= ctx.N && !word; ++i)
                    if (m.odd & (1u << ctx.S_id(i)))
                        word = true;
                if (word)
                    continue;
            }
            r.add_term(k.first, k.second, v);
        }
        return r;
    }
    if (!ctx.has_nabla)
        return *this;
    MElem r(ctx_, car_);
    int d = car_->dim();
    for (auto& [k, v] : t_) {
        const Mono& m = k.first;
        int texp = m.ev[ctx.T_id()];
        uint32_t sbits = 0;
        for (int i = 1; i <= ctx.N; ++i)
            if (m.odd & (1u << ctx.S_id(i)))
                sbits |= 1u << i;
        if (texp == 0 && sbits == 0) {
            r.add_term(m, k.second, v);
            continue;
        }
        // nabla word sits rightmost in the canonical word; apply to the
        // generator, innermost (largest S index) first.
        Vec vec(d, Rat(0));
        vec[k.second] = v;
        for (int i = ctx.N; i >= 1; --i)
            if (sbits & (1u << i))
                vec = car_->apply_S(i, vec);
        for (int t = 0; t < texp; ++t)
            vec = car_->apply_T(vec);
        Mono m2 = m;
        m2.ev[ctx.T_id()] = 0;
        for (int i = 1; i <= ctx.N; ++i)
            m2.odd &= ~(1u << ctx.S_id(i));
        for (int g = 0; g < d; ++g)
            r.add_term(m2, g, vec[g]);
    }
    return r;
}

std::string MElem::str() const
{
    if (t_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, v] : t_) {
        std::string cs = rat_str(v);
        bool neg = cs[0] == '-';
        std::string abs = neg ? cs.substr(1) : cs;
        if (!first)
            os << (neg ? " - " : " + ");
        else if (neg)
            os << "-";
        std::string body = ctx_->render_mono(k.first);
        if (!body.empty())
            body += "*";
        if (abs == "1" && !body.empty())
            os << body << "(" << car_->names[k.second] << ")";
        else
            os << abs << "*" << body << "(" << car_->names[k.second] << ")";
        first = false;
    }
    return os.str();
}

MElem mul_poly(const Poly& p, const MElem& x)
{
    if (p.table().get() != x.ctx()->table().get())
        throw std::invalid_argument("mul_poly: context mismatch");
    MElem r(x.ctx(), x.carrier());
    for (auto& [mp, cp] : p.terms()) {
        for (auto& [k, cx] : x.terms()) {
            auto prods = mul_odd_words(*p.table(), mp.odd, k.first.odd);
            for (auto& pr : prods) {
                Mono m;
                m.ev.resize(p.table()->n_even());
                for (int i = 0; i < p.table()->n_even(); ++i)
                    m.ev[i] = mp.ev[i] + k.first.ev[i] + pr.ev_delta[i];
                m.odd = pr.word;
                r.add_term(m, k.second, cp * cx * pr.c);
            }
        }
    }
    return r.normalized();
}

MElem act_nabla(const Poly& h, const MElem& x)
{
    return mul_poly(h, x);
}

MElem extend_to_ctx(const MElem& x, const CtxPtr& dst)
{
    const auto& src = *x.ctx();
    std::vector<Poly> ev(src.table()->n_even(), Poly::zero(dst->table()));
    std::vector<Poly> od(src.table()->n_odd(), Poly::zero(dst->table()));
    auto var_in_dst = [&](const std::string& name) {
        for (int i = 0; i < dst->n_vars(); ++i)
            if (dst->vars[i] == name)
                return i;
        return -1;
    };
    for (int v = 0; v < src.n_vars(); ++v) {
        int dv = var_in_dst(src.vars[v]);
        if (dv < 0) {
            // dropped variable: legal only when unused
            for (auto& [k, c] : x.terms()) {
                (void)c;
                if (k.first.ev[src.lambda_id(v)] != 0)
                    throw std::invalid_argument("extend_to_ctx: dropped variable in use");
                for (int i = 1; i <= src.N; ++i)
                    if (k.first.odd & (1u << src.theta_id(v, i)))
                        throw std::invalid_argument("extend_to_ctx: dropped variable in use");
            }
            continue;
        }
        ev[src.lambda_id(v)] = dst->lambda(dv);
        for (int i = 1; i <= src.N; ++i)
            od[src.theta_id(v, i)] = dst->theta(dv, i);
    }
    if (src.has_nabla) {
        ev[src.T_id()] = dst->T();
        for (int i = 1; i <= src.N; ++i)
            od[src.S_id(i)] = dst->S(i);
    }
    MElem r(dst, x.carrier());
    for (auto& [k, c] : x.terms()) {
        Poly p(src.table());
        p.add_term(k.first, c);
        Poly q = p.substitute(dst->table(), ev, od);
        for (auto& [m, cc] : q.terms())
            r.add_term(m, k.second, cc);
    }
    return r.normalized();
}

MElem subst_var(const MElem& x, int var, const AffineImage& img, const CtxPtr& dst)
{
    MElem r(dst, x.carrier());
    for (auto& [k, c] : x.terms()) {
        Poly p(x.ctx()->table());
        p.add_term(k.first, c);
        Poly q = substitute_affine(*x.ctx(), p, var, img, dst);
        for (auto& [m, cc] : q.terms())
            r.add_term(m, k.second, cc);
    }
    return r.normalized();
}

MElem reduce_nabla(const MElem& x, int var)
{
    const auto& src = *x.ctx();
    std::vector<std::string> keep;
    for (int v = 0; v < src.n_vars(); ++v)
        if (v != var)
            keep.push_back(src.vars[v]);
    auto dst = make_context(src.flavor, src.N, keep, true);
    AffineImage img;
    for (int v = 0; v < dst->n_vars(); ++v)
        img.parts.push_back({-1, v});
    img.parts.push_back({-1, -1});
    return subst_var(x, var, img, dst);
}

MElem unreduce_nabla(const MElem& x, const CtxPtr& dst)
{
    const auto& src = *x.ctx();
    if (!src.has_nabla)
        return extend_to_ctx(x, dst);
    std::vector<Poly> ev(src.table()->n_even(), Poly::zero(dst->table()));
    std::vector<Poly> od(src.table()->n_odd(), Poly::zero(dst->table()));
    auto var_in_dst = [&](const std::string& name) {
        for (int i = 0; i < dst->n_vars(); ++i)
            if (dst->vars[i] == name)
                return i;
        throw std::invalid_argument("unreduce_nabla: missing variable " + name);
    };
    for (int v = 0; v < src.n_vars(); ++v) {
        int dv = var_in_dst(src.vars[v]);
        ev[src.lambda_id(v)] = dst->lambda(dv);
        for (int i = 1; i <= src.N; ++i)
            od[src.theta_id(v, i)] = dst->theta(dv, i);
    }
    Poly tsum = Poly::zero(dst->table());
    std::vector<Poly> ssum(src.N + 1, Poly::zero(dst->table()));
    for (int dv = 0; dv < dst->n_vars(); ++dv) {
        tsum = tsum - dst->lambda(dv);
        for (int i = 1; i <= src.N; ++i)
            ssum[i] = ssum[i] - dst->theta(dv, i);
    }
    ev[src.T_id()] = tsum;
    for (int i = 1; i <= src.N; ++i)
        od[src.S_id(i)] = ssum[i];
    MElem r(dst, x.carrier());
    for (auto& [k, c] : x.terms()) {
        Poly p(src.table());
        p.add_term(k.first, c);
        Poly q = p.substitute(dst->table(), ev, od);
        for (auto& [m, cc] : q.terms())
            r.add_term(m, k.second, cc);
    }
    return r;
}

MElem definite_integral(const MElem& x, int var, const Poly& F, const Poly& G)
{
    const auto& ctx = *x.ctx();
    if (F.parity_or(0) != 0 || G.parity_or(0) != 0)
        throw std::invalid_argument("definite_integral: odd bound");
    IndexSet fullI = full_set(ctx.N);
    MElem r(x.ctx(), x.carrier());
    for (auto& [k, c] : x.terms()) {
        auto sp = ctx.split_var(k.first, var);
        if (sp.I != fullI)
            continue;
        Poly bound = G.pow(sp.m + 1) - F.pow(sp.m + 1);
        Poly rest(ctx.table());
        rest.add_term(sp.rest, c * rat(sp.sign, sp.m + 1));
        Poly prod = bound * rest;
        for (auto& [m, cc] : prod.terms())
            r.add_term(m, k.second, cc);
    }
    return r.normalized();
}

MElem antideriv_lambda(const MElem& x, int var)
{
    const auto& ctx = *x.ctx();
    int lid = ctx.lambda_id(var);
    MElem r(x.ctx(), x.carrier());
    for (auto& [k, c] : x.terms()) {
        Mono m = k.first;
        int e = m.ev[lid];
        m.ev[lid] = e + 1;
        r.add_term(m, k.second, c / Rat(e + 1));
    }
    return r;
}

MElem eval_lambda_at(const MElem& x, int var, const Poly& value)
{
    const auto& ctx = *x.ctx();
    if (value.parity_or(0) != 0)
        throw std::invalid_argument("eval_lambda_at: odd value");
    int lid = ctx.lambda_id(var);
    MElem r(x.ctx(), x.carrier());
    for (auto& [k, c] : x.terms()) {
        Mono m = k.first;
        int e = m.ev[lid];
        m.ev[lid] = 0;
        Poly rest(ctx.table());
        rest.add_term(m, c);
        Poly prod = value.pow(e) * rest;
        for (auto& [mm, cc] : prod.terms())
            r.add_term(mm, k.second, cc);
    }
    return r.normalized();
}

MElem integrate_lambda(const MElem& x, int var, const Poly& F, const Poly& G)
{
    MElem ad = antideriv_lambda(x, var);
    return eval_lambda_at(ad, var, G) - eval_lambda_at(ad, var, F);
}

MElem coeff_of(const MElem& x, int var, int mdeg, IndexSet I)
{
    const auto& ctx = *x.ctx();
    MElem r(x.ctx(), x.carrier());
    for (auto& [k, c] : x.terms()) {
        auto sp = ctx.split_var(k.first, var);
        if (sp.m != mdeg || sp.I != I)
            continue;
        r.add_term(sp.rest, k.second, c * Rat(sp.sign));
    }
    return r;
}

MElem residue(const MElem& x, int var)
{
    return coeff_of(x, var, 0, full_set(x.ctx()->N));
}

int lambda_degree(const MElem& x, int var)
{
    int lid = x.ctx()->lambda_id(var);
    int d = 0;
    for (auto& [k, c] : x.terms()) {
        (void)c;
        d = std::max(d, static_cast<int>(k.first.ev[lid]));
    }
    return d;
}

MElem deriv_lambda(const MElem& x, int var)
{
    int lid = x.ctx()->lambda_id(var);
    MElem r(x.ctx(), x.carrier());
    for (auto& [k, c] : x.terms()) {
        if (k.first.ev[lid] == 0)
            continue;
        Mono m = k.first;
        m.ev[lid] -= 1;
        r.add_term(m, k.second, c * Rat(k.first.ev[lid]));
    }
    return r;
}

MElem deriv_theta(const MElem& x, int var, int i)
{
    const auto& ctx = *x.ctx();
    int id = ctx.theta_id(var, i);
    uint32_t bit = 1u << id;
    MElem r(x.ctx(), x.carrier());
    for (auto& [k, c] : x.terms()) {
        if (!(k.first.odd & bit))
            continue;
        int before = __builtin_popcount(k.first.odd & (bit - 1));
        Mono m = k.first;
        m.odd &= ~bit;
        r.add_term(m, k.second, (before & 1) ? -c : c);
    }
    return r;
}

MElem exp_nabla_partial(const MElem& x, int var)
{
    const auto& ctx = *x.ctx();
    if (!ctx.has_nabla)
        throw std::invalid_argument("exp_nabla_partial: needs nabla context");
    MElem total = x;
    MElem cur = x;
    Rat fact(1);
    for (int k = 1;; ++k) {
        MElem next = mul_poly(ctx.T(), deriv_lambda(cur, var));
        for (int i = 1; i <= ctx.N; ++i)
            next = next + mul_poly(ctx.S(i), deriv_theta(cur, var, i));
        if (next.is_zero())
            break;
        fact *= Rat(k);
        total.add_scaled(next, Rat(1) / fact);
        cur = next;
        if (k > 64)
            throw std::runtime_error("exp_nabla_partial: expansion did not terminate");
    }
    return total.normalized();
}

NablaSplit split_nabla(const SuperContext& ctx, const Mono& m)
{
    NablaSplit s;
    s.lam = m;
    s.t_exp = 0;
    s.sset = 0;
    if (ctx.has_nabla) {
        s.t_exp = m.ev[ctx.T_id()];
        s.lam.ev[ctx.T_id()] = 0;
        for (int i = 1; i <= ctx.N; ++i) {
            uint32_t bit = 1u << ctx.S_id(i);
            if (m.odd & bit) {
                s.sset |= 1u << (i - 1);
                s.lam.odd &= ~bit;
            }
        }
    }
    s.word_parity = popcount(s.sset) & 1;
    return s;
}

MElem mod_nabla_project(const MElem& x)
{
    const auto& ctx = *x.ctx();
    if (ctx.n_vars() != 0)
        throw std::invalid_argument("mod_nabla_project: expects a bare module element");
    MElem r(x.ctx(), x.carrier());
    for (auto& [k, c] : x.terms()) {
        bool has_nabla_word = false;
        if (ctx.has_nabla) {
            if (k.first.ev[ctx.T_id()] > 0)
                has_nabla_word = true;
            for (int i = 1; i <= ctx.N; ++i)
                if (k.first.odd & (1u << ctx.S_id(i)))
                    has_nabla_word = true;
        }
        if (!has_nabla_word)
            r.add_term(k.first, k.second, c);
    }
    return r;
}

}  // namespace svao
