#include "svao/vertex.hpp"

#include "svao/superfun.hpp"

#include <sstream>

namespace svao {

namespace {

int pm(int exp) { return (exp & 1) ? -1 : 1; }

std::string tuple_name(const Carrier& V, std::initializer_list<int> gens)
{
    std::string s = "(";
    bool first = true;
    for (int g : gens) {
        if (!first)
            s += ",";
        s += V.names[g];
        first = false;
    }
    return s + ")";
}

}  // namespace

void VAStructure::set_mu(int ga, int gb, MElem value)
{
    mu_[{ga, gb}] = value.normalized();
    has_mu_ = true;
}

const MElem* VAStructure::mu_entry(int ga, int gb) const
{
    auto it = mu_.find({ga, gb});
    return it == mu_.end() ? nullptr : &it->second;
}

void VAStructure::set_closure(const WordKey& a, const WordKey& b, MElem value)
{
    closure_[{a, b}] = value.normalized();
}

MElem VAStructure::mu_elems(const MElem& x, const MElem& y) const
{
    if (!has_mu_)
        throw NotEvaluable("no multiplication table");
    auto out = ctx0();
    MElem r(out, V());
    const auto& cx = *x.ctx();
    const auto& cy = *y.ctx();
    auto assert_bare = [](const NablaSplit& w) {
        if (w.lam.odd != 0)
            throw std::invalid_argument("mu_elems: arguments must be bare module elements");
        for (int e : w.lam.ev)
            if (e != 0)
                throw std::invalid_argument("mu_elems: arguments must be bare module elements");
    };
    for (auto& [kx, vx] : x.terms()) {
        NablaSplit wx = split_nabla(cx, kx.first);
        assert_bare(wx);
        for (auto& [ky, vy] : y.terms()) {
            NablaSplit wy = split_nabla(cy, ky.first);
            assert_bare(wy);
            const MElem* val = nullptr;
            if (wx.t_exp == 0 && wx.sset == 0 && wy.t_exp == 0 && wy.sset == 0) {
                val = mu_entry(kx.second, ky.second);
                if (!val) {
                    // absent generator pair: zero by table convention
                    continue;
                }
            } else {
                auto it = closure_.find({WordKey{wx.t_exp, wx.sset, kx.second},
                                         WordKey{wy.t_exp, wy.sset, ky.second}});
                if (it == closure_.end())
                    throw NotEvaluable("product of " + V()->names[kx.second] + "," +
                                       V()->names[ky.second] + " with nabla words not closed");
                val = &it->second;
            }
            r.add_scaled(extend_to_ctx(*val, out), vx * vy);
        }
    }
    return r.normalized();
}

namespace {

// bare (nabla word, generator) element over a fresh 0-variable context
MElem strip_elem(const SuperContext& ctx, const CtxPtr& ctx0, const CarrierPtr& car,
                 const NablaSplit& sp, int gen)
{
    MElem e(ctx0, car);
    Mono m;
    m.ev.assign(ctx0->table()->n_even(), 0);
    m.ev[ctx0->T_id()] = sp.t_exp;
    for (int i = 1; i <= ctx.N; ++i)
        if (sp.sset & (1u << (i - 1)))
            m.odd |= 1u << ctx0->S_id(i);
    e.add_term(m, gen, Rat(1));
    return e;
}

}  // namespace

MElem dot_poly_poly(const DotFn& dot, const CarrierPtr& out_carrier, const MElem& P,
                    const MElem& Q)
{
    if (P.ctx().get() != Q.ctx().get() && !P.ctx()->same(*Q.ctx()))
        throw std::invalid_argument("dot_poly_poly: context mismatch");
    auto out = P.ctx();
    const auto& ctx = *out;
    MElem r(out, out_carrier);
    auto ctx0 = make_context(ctx.flavor, ctx.N, {}, true);
    for (auto& [kp, cp] : P.terms()) {
        NablaSplit sp = split_nabla(ctx, kp.first);
        int pu = (sp.word_parity + P.carrier()->parity(kp.second)) & 1;
        MElem xe = strip_elem(ctx, ctx0, P.carrier(), sp, kp.second);
        for (auto& [kq, cq] : Q.terms()) {
            NablaSplit sq = split_nabla(ctx, kq.first);
            MElem ye = strip_elem(ctx, ctx0, Q.carrier(), sq, kq.second);
            MElem prod = dot(xe, ye);
            if (prod.is_zero())
                continue;
            int sgn = pm(sq.lam.parity() * pu);
            Poly coeff(ctx.table());
            coeff.add_term(sp.lam, Rat(1));
            Poly coeffq(ctx.table());
            coeffq.add_term(sq.lam, Rat(1));
            MElem term = mul_poly(coeff * coeffq, extend_to_ctx(prod, out));
            r.add_scaled(term, cp * cq * Rat(sgn));
        }
    }
    return r.normalized();
}

MElem mu_poly_poly(const VAStructure& S, const MElem& P, const MElem& Q)
{
    DotFn dot = [&S](const MElem& x, const MElem& y) { return S.mu_elems(x, y); };
    return dot_poly_poly(dot, S.V(), P, Q);
}

MElem op_int_dLambda_gen(const DotFn& dot, const MElem& a, const Poly& F, const Poly& G,
                         const MElem& x, int var)
{
    const auto& ctx = *x.ctx();
    auto out = x.ctx();
    IndexSet fullI = full_set(ctx.N);
    int pa = a.parity_or(0);
    MElem r(out, x.carrier());
    auto ctx0 = make_context(ctx.flavor, ctx.N, {}, true);
    bool first_set = true;
    for (auto& [k, c] : x.terms()) {
        auto sp = ctx.split_var(k.first, var);
        if (sp.I != fullI)
            continue;
        Poly bound = (G.pow(sp.m + 1) - F.pow(sp.m + 1)) * rat(1, sp.m + 1);
        NablaSplit rest = split_nabla(ctx, sp.rest);
        int pullsign = pm(rest.lam.parity() * pa);
        MElem ve = strip_elem(ctx, ctx0, x.carrier(), rest, k.second);
        for (auto& [mb, cb] : bound.terms()) {
            if (mb.odd != 0)
                throw std::invalid_argument("op_int_dLambda: bound not even monomials");
            int texp = ctx.has_nabla ? mb.ev[ctx.T_id()] : 0;
            MElem ta = act_nabla(a.ctx()->T().pow(texp), a);
            MElem prod = dot(ta, ve);
            if (first_set) {
                r = MElem(out, prod.carrier());
                first_set = false;
            }
            if (prod.is_zero())
                continue;
            Mono lampart = mb;
            if (ctx.has_nabla)
                lampart.ev[ctx.T_id()] = 0;
            Poly coeff(ctx.table());
            coeff.add_term(lampart, cb);
            Poly coeff2(ctx.table());
            coeff2.add_term(rest.lam, Rat(1));
            MElem term = mul_poly(coeff * coeff2, extend_to_ctx(prod, out));
            r.add_scaled(term, c * Rat(sp.sign * pullsign));
        }
    }
    return r.normalized();
}

MElem op_int_dLambda(const VAStructure& S, const MElem& a, const Poly& F, const Poly& G,
                     const MElem& x, int var)
{
    DotFn dot = [&S](const MElem& u, const MElem& v) { return S.mu_elems(u, v); };
    return op_int_dLambda_gen(dot, a, F, G, x, var);
}

MElem op_int_dlambda(const VAStructure& S, const MElem& b, const Poly& lo, const Poly& hi,
                     const MElem& x, int var)
{
    const auto& ctx = *x.ctx();
    auto out = x.ctx();
    int pb = b.parity_or(0);
    MElem r(out, S.V());
    auto ctx0 = S.ctx0();
    for (auto& [k, c] : x.terms()) {
        int m = k.first.ev[ctx.lambda_id(var)];
        Poly bound = (hi.pow(m + 1) - lo.pow(m + 1)) * rat(1, m + 1);
        Mono restmono = k.first;
        restmono.ev[ctx.lambda_id(var)] = 0;
        NablaSplit rest = split_nabla(ctx, restmono);
        int pullsign = pm(rest.lam.parity() * pb);
        MElem ve(ctx0, S.V());
        {
            Mono mm;
            mm.ev.assign(ctx0->table()->n_even(), 0);
            mm.ev[ctx0->T_id()] = rest.t_exp;
            for (int i = 1; i <= S.N(); ++i)
                if (rest.sset & (1u << (i - 1)))
                    mm.odd |= 1u << ctx0->S_id(i);
            ve.add_term(mm, k.second, Rat(1));
        }
        for (auto& [mb, cb] : bound.terms()) {
            if (mb.odd != 0)
                throw std::invalid_argument("op_int_dlambda: bound not even monomials");
            int texp = ctx.has_nabla ? mb.ev[ctx.T_id()] : 0;
            MElem tb = act_nabla(b.ctx()->T().pow(texp), b);
            MElem prod = S.mu_elems(tb, ve);
            if (prod.is_zero())
                continue;
            Mono lampart = mb;
            if (ctx.has_nabla)
                lampart.ev[ctx.T_id()] = 0;
            Poly coeff(ctx.table());
            coeff.add_term(lampart, cb);
            Poly coeff2(ctx.table());
            coeff2.add_term(rest.lam, Rat(1));
            MElem term = mul_poly(coeff * coeff2, extend_to_ctx(prod, out));
            r.add_scaled(term, c * Rat(pullsign));
        }
    }
    return r.normalized();
}

MElem op_exp_nabla(const VAStructure& S, const MElem& a, const MElem& x, int var)
{
    const auto& ctx = *x.ctx();
    auto out = x.ctx();
    int pa = a.parity_or(0);
    MElem r(out, S.V());
    auto ctx1 = make_context(ctx.flavor, ctx.N, {"e"}, true);
    auto ctx0 = S.ctx0();
    for (auto& [k, c] : x.terms()) {
        auto sp = ctx.split_var(k.first, var);
        NablaSplit rest = split_nabla(ctx, sp.rest);
        MElem ve(ctx0, S.V());
        {
            Mono mm;
            mm.ev.assign(ctx0->table()->n_even(), 0);
            mm.ev[ctx0->T_id()] = rest.t_exp;
            for (int i = 1; i <= S.N(); ++i)
                if (rest.sset & (1u << (i - 1)))
                    mm.odd |= 1u << ctx0->S_id(i);
            ve.add_term(mm, k.second, Rat(1));
        }
        // (-1)^{p(a)#I} e^{nabla d_Lambda}(Lambda^{m|I} a), then times v
        int sgn = pm(pa * popcount(sp.I)) * sp.sign * pm(rest.lam.parity() * pa);
        MElem lam_a = mul_poly(ctx1->monomial(0, sp.m, sp.I), extend_to_ctx(a, ctx1));
        MElem shifted = exp_nabla_partial(lam_a, 0);
        for (auto& [ks, cs] : shifted.terms()) {
            NablaSplit ssp = split_nabla(*ctx1, ks.first);
            MElem ua(ctx0, S.V());
            {
                Mono mm;
                mm.ev.assign(ctx0->table()->n_even(), 0);
                mm.ev[ctx0->T_id()] = ssp.t_exp;
                for (int i = 1; i <= S.N(); ++i)
                    if (ssp.sset & (1u << (i - 1)))
                        mm.odd |= 1u << ctx0->S_id(i);
                ua.add_term(mm, ks.second, Rat(1));
            }
            MElem prod = S.mu_elems(ua, ve);
            if (prod.is_zero())
                continue;
            // transplant the e-variable monomial onto `var` of out
            Mono lamvar;
            lamvar.ev.assign(ctx.table()->n_even(), 0);
            lamvar.ev[ctx.lambda_id(var)] = ssp.lam.ev[ctx1->lambda_id(0)];
            for (int i = 1; i <= S.N(); ++i)
                if (ssp.lam.odd & (1u << ctx1->theta_id(0, i)))
                    lamvar.odd |= 1u << ctx.theta_id(var, i);
            Poly coeff(ctx.table());
            coeff.add_term(lamvar, cs);
            Poly coeff2(ctx.table());
            coeff2.add_term(rest.lam, Rat(1));
            MElem term = mul_poly(coeff * coeff2, extend_to_ctx(prod, out));
            r.add_scaled(term, c * Rat(sgn));
        }
    }
    return r.normalized();
}

MElem integral_bracket(const VAStructure& S, const MElem& a, const MElem& b, const CtxPtr& out,
                       int var)
{
    PairFn lam = [&S](const MElem& x, const MElem& y, const CtxPtr& o, int v) {
        return lam_bracket(S.lca(), x, y, o, v);
    };
    DotFn dot = [&S](const MElem& x, const MElem& y) { return S.mu_elems(x, y); };
    return integral_pairing(S.N(), lam, dot, a, b, out, var);
}

MElem integral_bracket_poly(const VAStructure& S, const MElem& P, const MElem& Q,
                            const CtxPtr& out, int var)
{
    const auto& ctx = *out;
    MElem r(out, S.V());
    int nb = S.nbar();
    auto ctx0 = S.ctx0();
    auto strip = [&](const NablaSplit& sp, int gen) {
        MElem e(ctx0, S.V());
        Mono m;
        m.ev.assign(ctx0->table()->n_even(), 0);
        m.ev[ctx0->T_id()] = sp.t_exp;
        for (int i = 1; i <= S.N(); ++i)
            if (sp.sset & (1u << (i - 1)))
                m.odd |= 1u << ctx0->S_id(i);
        e.add_term(m, gen, Rat(1));
        return e;
    };
    for (auto& [kp, cp] : P.terms()) {
        NablaSplit sp = split_nabla(ctx, kp.first);
        int arg1_par = (sp.word_parity + S.V()->parity(kp.second)) & 1;
        int s1 = pm(sp.lam.parity() * nb);
        for (auto& [kq, cq] : Q.terms()) {
            NablaSplit sq = split_nabla(ctx, kq.first);
            int s2 = pm(sq.lam.parity() * ((nb + arg1_par) & 1));
            MElem base = integral_bracket(S, strip(sp, kp.second), strip(sq, kq.second), out, var);
            if (base.is_zero())
                continue;
            Poly coeff(ctx.table());
            coeff.add_term(sp.lam, Rat(1));
            Poly coeffq(ctx.table());
            coeffq.add_term(sq.lam, Rat(1));
            r.add_scaled(mul_poly(coeff * coeffq, base), cp * cq * Rat(s1 * s2));
        }
    }
    return r.normalized();
}

// --- axiom checkers ---------------------------------------------------------

CheckResult check_mu_even(const VAStructure& S)
{
    CheckResult r{"mu-even", CheckStatus::Pass, ""};
    const auto& V = *S.V();
    try {
        for (int a = 0; a < V.dim(); ++a)
            for (int b = 0; b < V.dim(); ++b) {
                MElem p = S.mu_elems(S.gen_elem(a), S.gen_elem(b));
                int want = (V.parity(a) + V.parity(b)) & 1;
                int got = p.parity_or(want, false);
                if (got == -2 || (got >= 0 && got != want)) {
                    r.status = CheckStatus::Fail;
                    r.witness = tuple_name(V, {a, b});
                    return r;
                }
            }
    } catch (const NotEvaluable& e) {
        r.status = CheckStatus::NotEvaluable;
        r.witness = e.what();
    }
    return r;
}

CheckResult check_derivations(const VAStructure& S)
{
    CheckResult r{"derivations", CheckStatus::Pass, ""};
    const auto& V = *S.V();
    auto ctx0 = S.ctx0();
    try {
        for (int a = 0; a < V.dim(); ++a)
            for (int b = 0; b < V.dim(); ++b) {
                MElem ea = S.gen_elem(a), eb = S.gen_elem(b);
                MElem ab = S.mu_elems(ea, eb);
                if (S.flavor() == Flavor::W) {
                    MElem lhs = act_nabla(ctx0->T(), ab);
                    MElem rhs = S.mu_elems(act_nabla(ctx0->T(), ea), eb) +
                                S.mu_elems(ea, act_nabla(ctx0->T(), eb));
                    if (!(lhs == rhs)) {
                        r.status = CheckStatus::Fail;
                        r.witness = "T" + tuple_name(V, {a, b});
                        return r;
                    }
                }
                for (int i = 1; i <= V.N; ++i) {
                    MElem lhs = act_nabla(ctx0->S(i), ab);
                    MElem rhs = S.mu_elems(act_nabla(ctx0->S(i), ea), eb) +
                                S.mu_elems(ea, act_nabla(ctx0->S(i), eb))
                                    .scaled(Rat(pm(V.parity(a))));
                    if (!(lhs == rhs)) {
                        r.status = CheckStatus::Fail;
                        r.witness = "S" + std::to_string(i) + tuple_name(V, {a, b});
                        return r;
                    }
                }
            }
    } catch (const NotEvaluable& e) {
        r.status = CheckStatus::NotEvaluable;
        r.witness = e.what();
    }
    return r;
}

CheckResult check_quasi_commutativity(const VAStructure& S)
{
    CheckResult r{"quasi-commutativity", CheckStatus::Pass, ""};
    const auto& V = *S.V();
    auto ctx1 = S.lca().ctx1();
    try {
        for (int a = 0; a < V.dim(); ++a)
            for (int b = 0; b < V.dim(); ++b) {
                MElem ea = S.gen_elem(a), eb = S.gen_elem(b);
                MElem lhs = S.mu_elems(ea, eb) -
                            S.mu_elems(eb, ea).scaled(Rat(pm(V.parity(a) * V.parity(b))));
                MElem br = lam_bracket(S.lca(), ea, eb, ctx1, 0);
                MElem rhs = definite_integral(br, 0, -ctx1->T(), Poly::zero(ctx1->table()));
                MElem diff = extend_to_ctx(lhs, ctx1) - rhs;
                if (!diff.is_zero()) {
                    r.status = CheckStatus::Fail;
                    r.witness = tuple_name(V, {a, b}) + ": defect " + diff.str();
                    return r;
                }
            }
    } catch (const NotEvaluable& e) {
        r.status = CheckStatus::NotEvaluable;
        r.witness = e.what();
    }
    return r;
}

CheckResult check_quasi_associativity(const VAStructure& S)
{
    CheckResult r{"quasi-associativity", CheckStatus::Pass, ""};
    const auto& V = *S.V();
    auto ctx1 = S.lca().ctx1();
    try {
        for (int a = 0; a < V.dim(); ++a)
            for (int b = 0; b < V.dim(); ++b)
                for (int c = 0; c < V.dim(); ++c) {
                    MElem ea = S.gen_elem(a), eb = S.gen_elem(b), ec = S.gen_elem(c);
                    MElem lhs =
                        S.mu_elems(S.mu_elems(ea, eb), ec) - S.mu_elems(ea, S.mu_elems(eb, ec));
                    MElem brbc = lam_bracket(S.lca(), eb, ec, ctx1, 0);
                    MElem brac = lam_bracket(S.lca(), ea, ec, ctx1, 0);
                    MElem t1 = op_int_dLambda(S, ea, Poly::zero(ctx1->table()), ctx1->T(), brbc, 0);
                    MElem t2 = op_int_dLambda(S, eb, Poly::zero(ctx1->table()), ctx1->T(), brac, 0);
                    MElem rhs = t1 + t2.scaled(Rat(pm(V.parity(a) * V.parity(b))));
                    MElem diff = extend_to_ctx(lhs, ctx1) - rhs;
                    if (!diff.is_zero()) {
                        r.status = CheckStatus::Fail;
                        r.witness = tuple_name(V, {a, b, c}) + ": defect " + diff.str();
                        return r;
                    }
                }
    } catch (const NotEvaluable& e) {
        r.status = CheckStatus::NotEvaluable;
        r.witness = e.what();
    }
    return r;
}

CheckResult check_wick(const VAStructure& S)
{
    CheckResult r{"wick", CheckStatus::Pass, ""};
    const auto& V = *S.V();
    auto ctx1 = S.lca().ctx1();
    int nb = S.nbar();
    auto ctx2 = make_context(S.flavor(), S.N(), {"1", "g"}, true);
    try {
        for (int a = 0; a < V.dim(); ++a)
            for (int b = 0; b < V.dim(); ++b)
                for (int c = 0; c < V.dim(); ++c) {
                    MElem ea = S.gen_elem(a), eb = S.gen_elem(b), ec = S.gen_elem(c);
                    MElem lhs = lam_bracket(S.lca(), ea, S.mu_elems(eb, ec), ctx1, 0);
                    MElem brab = lam_bracket(S.lca(), ea, eb, ctx1, 0);
                    MElem brac = lam_bracket(S.lca(), ea, ec, ctx1, 0);
                    MElem t1 = mu_poly_poly(S, brab, extend_to_ctx(ec, ctx1));
                    MElem t2 = mu_poly_poly(S, extend_to_ctx(eb, ctx1), brac)
                                   .scaled(Rat(pm((V.parity(a) + nb) * V.parity(b))));
                    // int_0^lambda dGamma [[a_L b]_G c]
                    MElem nested = lam_bracket_poly(S.lca(), extend_to_ctx(brab, ctx2),
                                                    extend_to_ctx(ec, ctx2), ctx2, 1);
                    MElem integ = definite_integral(nested, 1, Poly::zero(ctx2->table()),
                                                    ctx2->lambda(0));
                    MElem t3 = extend_to_ctx(integ, ctx1);
                    MElem diff = lhs - t1 - t2 - t3;
                    if (!diff.is_zero()) {
                        r.status = CheckStatus::Fail;
                        r.witness = tuple_name(V, {a, b, c}) + ": defect " + diff.str();
                        return r;
                    }
                }
    } catch (const NotEvaluable& e) {
        r.status = CheckStatus::NotEvaluable;
        r.witness = e.what();
    }
    return r;
}

CheckReport check_va_axioms(const VAStructure& S)
{
    CheckReport rep = check_lca_axioms(S.lca());
    rep.add(check_mu_even(S));
    rep.add(check_derivations(S));
    rep.add(check_quasi_commutativity(S));
    rep.add(check_quasi_associativity(S));
    rep.add(check_wick(S));
    return rep;
}

CheckResult check_right_wick(const VAStructure& S)
{
    CheckResult r{"right-wick", CheckStatus::Pass, ""};
    const auto& V = *S.V();
    auto ctx1 = S.lca().ctx1();
    int nb = S.nbar();
    auto ctx2 = make_context(S.flavor(), S.N(), {"1", "g"}, true);
    try {
        for (int a = 0; a < V.dim(); ++a)
            for (int b = 0; b < V.dim(); ++b)
                for (int c = 0; c < V.dim(); ++c) {
                    MElem ea = S.gen_elem(a), eb = S.gen_elem(b), ec = S.gen_elem(c);
                    MElem lhs = lam_bracket(S.lca(), S.mu_elems(ea, eb), ec, ctx1, 0);
                    MElem brbc = lam_bracket(S.lca(), eb, ec, ctx1, 0);
                    MElem brac = lam_bracket(S.lca(), ea, ec, ctx1, 0);
                    MElem t1 = op_exp_nabla(S, ea, brbc, 0).scaled(Rat(pm(V.parity(a) * nb)));
                    MElem t2 = op_exp_nabla(S, eb, brac, 0)
                                   .scaled(Rat(pm((V.parity(a) + nb) * V.parity(b))));
                    // int_0^lambda dGamma [b_G [a_{L-G} c]]
                    auto ctx2e = make_context(S.flavor(), S.N(), {"1", "g", "e"}, true);
                    MElem brac_e = lam_bracket(S.lca(), ea, ec, ctx2e, 2);
                    AffineImage shift;
                    shift.parts.push_back({1, 0});
                    shift.parts.push_back({-1, 1});
                    MElem shifted = subst_var(brac_e, 2, shift, ctx2);
                    MElem nested = lam_bracket_poly(S.lca(), extend_to_ctx(eb, ctx2), shifted,
                                                    ctx2, 1);
                    MElem integ = definite_integral(nested, 1, Poly::zero(ctx2->table()),
                                                    ctx2->lambda(0));
                    MElem t3 = extend_to_ctx(integ, ctx1)
                                   .scaled(Rat(pm((V.parity(a) + nb) * V.parity(b))));
                    MElem diff = lhs - t1 - t2 - t3;
                    if (!diff.is_zero()) {
                        r.status = CheckStatus::Fail;
                        r.witness = tuple_name(V, {a, b, c}) + ": defect " + diff.str();
                        return r;
                    }
                }
    } catch (const NotEvaluable& e) {
        r.status = CheckStatus::NotEvaluable;
        r.witness = e.what();
    }
    return r;
}

CheckResult check_lsym(const VAStructure& S)
{
    CheckResult r{"lsym", CheckStatus::Pass, ""};
    const auto& V = *S.V();
    try {
        for (int a = 0; a < V.dim(); ++a)
            for (int b = 0; b < V.dim(); ++b)
                for (int c = 0; c < V.dim(); ++c) {
                    MElem ea = S.gen_elem(a), eb = S.gen_elem(b), ec = S.gen_elem(c);
                    int s = pm(V.parity(a) * V.parity(b));
                    MElem lhs = S.mu_elems(ea, S.mu_elems(eb, ec)) -
                                S.mu_elems(eb, S.mu_elems(ea, ec)).scaled(Rat(s));
                    MElem rhs = S.mu_elems(
                        S.mu_elems(ea, eb) - S.mu_elems(eb, ea).scaled(Rat(s)), ec);
                    if (!(lhs == rhs)) {
                        r.status = CheckStatus::Fail;
                        r.witness = tuple_name(V, {a, b, c});
                        return r;
                    }
                }
    } catch (const NotEvaluable& e) {
        r.status = CheckStatus::NotEvaluable;
        r.witness = e.what();
    }
    return r;
}

CheckResult check_skecom_integral_form(const VAStructure& S)
{
    CheckResult r{"skecom-integral-form", CheckStatus::Pass, ""};
    const auto& V = *S.V();
    auto ctx1 = S.lca().ctx1();
    try {
        for (int a = 0; a < V.dim(); ++a)
            for (int b = 0; b < V.dim(); ++b) {
                MElem ea = S.gen_elem(a), eb = S.gen_elem(b);
                MElem lhs = integral_bracket(S, eb, ea, ctx1, 0);
                MElem F = integral_bracket(S, ea, eb, ctx1, 0);
                AffineImage img;
                img.parts.push_back({-1, 0});
                img.parts.push_back({-1, -1});
                MElem rhs = subst_var(F, 0, img, ctx1)
                                .scaled(Rat(pm(V.parity(a) * V.parity(b) + S.nbar())));
                if (!(lhs == rhs)) {
                    r.status = CheckStatus::Fail;
                    r.witness = tuple_name(V, {b, a}) + ": defect " + (lhs - rhs).str();
                    return r;
                }
            }
    } catch (const NotEvaluable& e) {
        r.status = CheckStatus::NotEvaluable;
        r.witness = e.what();
    }
    return r;
}

namespace {

// LHS - RHS of the Jqas integral identity on one triple, over ctx2 = {1,2}
MElem jqas_defect(const VAStructure& S, int a, int b, int c, const CtxPtr& ctx2)
{
    const auto& V = *S.V();
    int nb = S.nbar();
    MElem ea = S.gen_elem(a), eb = S.gen_elem(b), ec = S.gen_elem(c);
    // IB in slot variables
    MElem ib_bc = integral_bracket(S, eb, ec, ctx2, 1);
    MElem ib_ac = integral_bracket(S, ea, ec, ctx2, 0);
    MElem ib_ab1 = integral_bracket(S, ea, eb, ctx2, 0);
    MElem t1 = integral_bracket_poly(S, extend_to_ctx(ea, ctx2), ib_bc, ctx2, 0);
    MElem t2 = integral_bracket_poly(S, extend_to_ctx(eb, ctx2), ib_ac, ctx2, 1)
                   .scaled(Rat(pm((V.parity(a) + nb) * (V.parity(b) + nb))));
    // inner difference: int^{L1} - int^{-L2-nabla} of [a b]
    auto ctxg = make_context(S.flavor(), S.N(), {"1", "2", "g"}, true);
    MElem ib_ab_g = integral_bracket(S, ea, eb, ctxg, 2);
    AffineImage to_l1;
    to_l1.parts.push_back({1, 0});
    MElem first = subst_var(ib_ab_g, 2, to_l1, ctx2);
    AffineImage to_ml2;
    to_ml2.parts.push_back({-1, 1});
    to_ml2.parts.push_back({-1, -1});
    MElem second = subst_var(ib_ab_g, 2, to_ml2, ctx2);
    MElem inner = first - second;
    MElem mid = integral_bracket_poly(S, extend_to_ctx(inner, ctxg),
                                      extend_to_ctx(ec, ctxg), ctxg, 2);
    AffineImage sum12;
    sum12.parts.push_back({1, 0});
    sum12.parts.push_back({1, 1});
    MElem rhs = subst_var(mid, 2, sum12, ctx2).scaled(Rat(pm((V.parity(a) + nb) * nb)));
    return t1 - t2 - rhs;
}

}  // namespace

CheckResult check_jqas_integral_form(const VAStructure& S)
{
    CheckResult r{"jqas-integral-form", CheckStatus::Pass, ""};
    const auto& V = *S.V();
    auto ctx2 = make_context(S.flavor(), S.N(), {"1", "2"}, true);
    try {
        for (int a = 0; a < V.dim(); ++a)
            for (int b = 0; b < V.dim(); ++b)
                for (int c = 0; c < V.dim(); ++c) {
                    MElem d = jqas_defect(S, a, b, c, ctx2);
                    if (!d.is_zero()) {
                        r.status = CheckStatus::Fail;
                        r.witness = tuple_name(V, {a, b, c}) + ": defect " + d.str();
                        return r;
                    }
                }
    } catch (const NotEvaluable& e) {
        r.status = CheckStatus::NotEvaluable;
        r.witness = e.what();
    }
    return r;
}

CheckReport check_integral_forms(const VAStructure& S)
{
    CheckReport rep;
    rep.add(check_skecom_integral_form(S));
    rep.add(check_jqas_integral_form(S));
    return rep;
}

// --- MC certificate ----------------------------------------------------------

MElem mc_ladder_component(const VAStructure& S, int ga, int gb, int gc, int n, const CtxPtr& ctx1)
{
    const auto& V = *S.V();
    int nb = S.nbar();
    MElem ea = S.gen_elem(ga), eb = S.gen_elem(gb), ec = S.gen_elem(gc);
    Poly l1 = ctx1->lambda(0);
    Poly T = ctx1->T();

    // C1 = W c + int_0^{l1} dL [W_L c],  W = int_{-T}^{l1} dl IB(a,b)
    MElem ib_ab = integral_bracket(S, ea, eb, ctx1, 0);
    MElem W = integrate_lambda(ib_ab, 0, -T, l1);
    MElem C1 = mu_poly_poly(S, W, extend_to_ctx(ec, ctx1));
    {
        auto ctxg = make_context(S.flavor(), S.N(), {"1", "g"}, true);
        MElem br = lam_bracket_poly(S.lca(), extend_to_ctx(W, ctxg), extend_to_ctx(ec, ctxg),
                                    ctxg, 1);
        MElem integ = definite_integral(br, 1, Poly::zero(ctxg->table()), ctxg->lambda(0));
        C1 = C1 + extend_to_ctx(integ, ctx1);
    }

    // C2 = -IB((l1+T)a, bc) - sum_m 1/(m+1) IB((l1+T)^{m+1} a, b_{m|N} c)
    MElem C2(ctx1, S.V());
    {
        MElem bc = S.mu_elems(eb, ec);
        MElem lta = mul_poly(l1 + T, extend_to_ctx(ea, ctx1));
        C2 = C2 - integral_bracket_poly(S, lta, extend_to_ctx(bc, ctx1), ctx1, 0);
        MElem br_bc = lam_bracket(S.lca(), eb, ec, ctx1, 0);
        int dmax = lambda_degree(br_bc, 0);
        for (int m = 0; m <= dmax; ++m) {
            MElem coef = coeff_of(br_bc, 0, m, full_set(S.N()));
            if (coef.is_zero())
                continue;
            MElem powa = mul_poly((l1 + T).pow(m + 1), extend_to_ctx(ea, ctx1));
            C2 = C2 - integral_bracket_poly(S, powa, extend_to_ctx(coef, ctx1), ctx1, 0)
                          .scaled(rat(1, m + 1));
        }
    }

    // C3 = (-1)^{(p(a)+Nbar)p(b)+1} (int_{l1}^{l1+T} dl b) IB(a,c)
    MElem ib_ac = integral_bracket(S, ea, ec, ctx1, 0);
    MElem C3 = op_int_dlambda(S, eb, l1, l1 + T, ib_ac, 0)
                   .scaled(Rat(pm((V.parity(ga) + nb) * V.parity(gb) + 1)));

    MElem F = C1 + C2 + C3;
    for (int k = 0; k < n; ++k)
        F = deriv_lambda(F, 0);
    return F;
}

McCertificate mc_check_va_certificate(const VAStructure& S)
{
    McCertificate cert;
    const auto& V = *S.V();
    auto ctx1 = S.lca().ctx1();
    auto ctx2 = make_context(S.flavor(), S.N(), {"1", "2"}, true);

    CheckReport pre;
    pre.add(S.lca().check_parity_legal());
    pre.add(check_sesquilinearity(S.lca()));
    pre.add(check_mu_even(S));
    pre.add(check_derivations(S));
    pre.add(check_skew(S.lca()));
    pre.add(check_quasi_commutativity(S));
    cert.pre_ok = pre.all_passed();
    if (!cert.pre_ok) {
        for (auto& c : pre.checks)
            if (!c.passed()) {
                cert.failing_line = "precondition " + c.name + ": " + c.witness;
                break;
            }
        return cert;
    }

    // n_max per instance: max bracket lambda-degree + T nilpotency + 2
    int maxdeg = 0;
    for (int a = 0; a < V.dim(); ++a)
        for (int b = 0; b < V.dim(); ++b)
            maxdeg = std::max(maxdeg, lambda_degree(S.lca().entry(a, b), 0));
    int nilp = V.dim() + 1;
    if (V.finite) {
        Mat p(V.dim(), Vec(V.dim(), Rat(0)));
        for (int i = 0; i < V.dim(); ++i)
            p[i][i] = 1;
        for (int k = 0; k <= V.dim(); ++k) {
            bool zero = true;
            for (auto& row : p)
                for (auto& x : row)
                    if (!is_zero(x)) {
                        zero = false;
                        break;
                    }
            if (zero) {
                nilp = k;
                break;
            }
            Mat q(V.dim(), Vec(V.dim(), Rat(0)));
            for (int i = 0; i < V.dim(); ++i)
                for (int j = 0; j < V.dim(); ++j)
                    for (int l = 0; l < V.dim(); ++l)
                        q[i][j] += V.nabla_mats[0][i][l] * p[l][j];
            p = q;
        }
    }
    cert.n_max = maxdeg + nilp + 2;

    cert.jqas_ok = true;
    cert.ladder_ok = true;
    try {
        for (int a = 0; a < V.dim() && cert.jqas_ok; ++a)
            for (int b = 0; b < V.dim() && cert.jqas_ok; ++b)
                for (int c = 0; c < V.dim() && cert.jqas_ok; ++c) {
                    MElem d = jqas_defect(S, a, b, c, ctx2);
                    if (!d.is_zero()) {
                        cert.jqas_ok = false;
                        cert.failing_line =
                            "jqas line " + tuple_name(V, {a, b, c}) + ": " + d.str();
                    }
                }
        if (cert.jqas_ok) {
            for (int a = 0; a < V.dim() && cert.ladder_ok; ++a)
                for (int b = 0; b < V.dim() && cert.ladder_ok; ++b)
                    for (int c = 0; c < V.dim() && cert.ladder_ok; ++c) {
                        MElem F0 = mc_ladder_component(S, a, b, c, 0, ctx1);
                        int ncap = std::max(cert.n_max, lambda_degree(F0, 0));
                        MElem F = F0;
                        for (int nn = 0; nn <= ncap; ++nn) {
                            MElem res = residue(F, 0);
                            if (!res.is_zero()) {
                                cert.ladder_ok = false;
                                cert.failing_line = "residue ladder n=" + std::to_string(nn) +
                                                    " at " + tuple_name(V, {a, b, c}) + ": " +
                                                    res.str();
                                break;
                            }
                            F = deriv_lambda(F, 0);
                            if (F.is_zero())
                                break;
                        }
                    }
        }
    } catch (const NotEvaluable& e) {
        cert.jqas_ok = cert.ladder_ok = false;
        cert.failing_line = std::string("not evaluable: ") + e.what();
    }
    return cert;
}

bool mc_check_va(const VAStructure& S)
{
    return mc_check_va_certificate(S).value();
}

// --- Pch2 ---------------------------------------------------------------------

Pch2Element::Pch2Element(CarrierPtr V, int shift, int par, int max_pole)
    : V_(std::move(V)), shift_(shift), par_(par), max_pole_(max_pole)
{
    ctx1_ = make_context(V_->flavor, V_->N, {"1"}, true);
    zero_ = MElem(ctx1_, V_);
}

void Pch2Element::set_value(int m, IndexSet I, int ga, int gb, MElem v)
{
    MElem n = v.normalized();
    if (n.is_zero())
        values_.erase({m, I, ga, gb});
    else
        values_[{m, I, ga, gb}] = std::move(n);
}

const MElem& Pch2Element::value(int m, IndexSet I, int ga, int gb) const
{
    auto it = values_.find({m, I, ga, gb});
    return it == values_.end() ? zero_ : it->second;
}

namespace {

// value tables on basis vectors of the FIRST or SECOND slot acted by T
MElem pch2_first_T(const Pch2Element& X, const Carrier& V, int m, IndexSet I, int ga, int gb)
{
    MElem acc(X.ctx1(), X.V());
    Vec e(V.dim(), Rat(0));
    e[ga] = 1;
    Vec Te = V.apply_T(e);
    for (int k = 0; k < V.dim(); ++k)
        if (!is_zero(Te[k]))
            acc.add_scaled(X.value(m, I, k, gb), Te[k]);
    return acc;
}

}  // namespace

Pch2Element pch2_from_structure(const VAStructure& S, int max_pole)
{
    const auto& V = *S.V();
    if (!V.finite)
        throw NotEvaluable("pch2_from_structure: finite carriers only");
    int shift = (V.N + 1) & 1;
    Pch2Element X(S.V(), shift, 1, max_pole);
    auto ctx1 = X.ctx1();
    int nb = S.nbar();
    // pole 0: beta; pole 1: the integral form
    for (int a = 0; a < V.dim(); ++a)
        for (int b = 0; b < V.dim(); ++b) {
            int sgn = pm(V.parity(a) * ((nb + 1) & 1));
            MElem ea = S.gen_elem(a), eb = S.gen_elem(b);
            MElem beta = lam_bracket(S.lca(), ea, eb, ctx1, 0).scaled(Rat(sgn));
            X.set_value(0, 0, a, b, beta);
            MElem ib = integral_bracket(S, ea, eb, ctx1, 0).scaled(Rat(-sgn));
            X.set_value(1, 0, a, b, ib);
        }
    // z-ladder: X(a,b; z^{-m-1}) = (1/m)(-lambda X(a,b; z^{-m}) - X(Ta,b; z^{-m}))
    for (int m = 1; m < max_pole; ++m)
        for (int a = 0; a < V.dim(); ++a)
            for (int b = 0; b < V.dim(); ++b) {
                MElem prev = X.value(m, 0, a, b);
                MElem ta = pch2_first_T(X, V, m, 0, a, b);
                MElem next = (mul_poly(-ctx1->lambda(0), prev) - ta).scaled(rat(1, m));
                X.set_value(m + 1, 0, a, b, next);
            }
    // zeta-ladder: multiply ascending zeta indices on the right
    for (int m = 0; m <= max_pole; ++m)
        for (IndexSet I = 1; I <= full_set(V.N); ++I) {
            int i = 31 - __builtin_clz(I);  // largest index bit
            IndexSet base = I & ~(1u << i);
            for (int a = 0; a < V.dim(); ++a)
                for (int b = 0; b < V.dim(); ++b) {
                    DiffOp op{DiffOp::Tag::MulZetaDiff, 1, 2, i + 1};
                    MElem v = pch2_right_action(X, X.value(m, base, a, b), op);
                    X.set_value(m, I, a, b, v);
                }
        }
    return X;
}

MElem pch2_right_action(const Pch2Element& X, const MElem& val, const DiffOp& op)
{
    auto ctx1 = X.ctx1();
    const auto& V = *X.V();
    Flavor fl = V.flavor;
    auto ctx2 = make_context(fl, V.N, {"1", "2"}, true);
    MElem un = unreduce_nabla(val, ctx2);
    MElem acted(ctx2, X.V());
    auto theta_deriv = [&](const MElem& x, int k1, int i) {
        // d_theta in W, D_theta = d_theta + theta d_lambda in K
        MElem d = deriv_theta(x, k1, i);
        if (fl == Flavor::K)
            d = d + mul_poly(ctx2->theta(k1, i), deriv_lambda(x, k1));
        return d;
    };
    switch (op.tag) {
    case DiffOp::Tag::MulZDiff:
        acted = deriv_lambda(un, op.l - 1) - deriv_lambda(un, op.k - 1);
        break;
    case DiffOp::Tag::MulZetaDiff: {
        for (auto& [k, c] : un.terms()) {
            MElem one(ctx2, X.V());
            one.add_term(k.first, k.second, c);
            int p = (k.first.parity() + V.parity(k.second) + X.shift()) & 1;
            MElem d = theta_deriv(one, op.l - 1, op.i) - theta_deriv(one, op.k - 1, op.i);
            acted.add_scaled(d, Rat(pm(p)));
        }
        break;
    }
    case DiffOp::Tag::DZ:
        acted = mul_poly(-ctx2->lambda(op.k - 1), un);
        break;
    case DiffOp::Tag::DZeta: {
        for (auto& [k, c] : un.terms()) {
            MElem one(ctx2, X.V());
            one.add_term(k.first, k.second, c);
            int p = (k.first.parity() + V.parity(k.second) + X.shift()) & 1;
            acted.add_scaled(mul_poly(ctx2->theta(op.k - 1, op.i), one), Rat(-pm(p)));
        }
        break;
    }
    }
    MElem red = reduce_nabla(acted, 1);
    return extend_to_ctx(red, ctx1);
}

MElem evaluate_pch2(const Pch2Element& X, int ga, int gb, int m, IndexSet I)
{
    if (m > X.max_pole())
        throw std::invalid_argument("evaluate_pch2: pole bound exceeded");
    return X.value(m, I, ga, gb);
}

VAStructure mc_to_va(const Pch2Element& X, const CtxPtr& ctx1)
{
    const auto& V = *X.V();
    int nb = V.N & 1;
    LCAStructure L(X.V(), ctx1);
    for (int a = 0; a < V.dim(); ++a)
        for (int b = 0; b < V.dim(); ++b) {
            int sgn = pm(V.parity(a) * ((nb + 1) & 1));
            L.set_entry(a, b, extend_to_ctx(X.value(0, 0, a, b), ctx1).scaled(Rat(sgn)));
        }
    VAStructure S(L);
    for (int a = 0; a < V.dim(); ++a)
        for (int b = 0; b < V.dim(); ++b) {
            int sgn = pm(V.parity(a) * ((nb + 1) & 1) + 1);
            MElem mu = residue(X.value(1, 0, a, b), 0).scaled(Rat(sgn));
            S.set_mu(a, b, extend_to_ctx(mu, S.ctx0()));
        }
    return S;
}

CheckResult check_pch2_equivariance(const Pch2Element& X)
{
    CheckResult r{"pch2-equivariance", CheckStatus::Pass, ""};
    const auto& V = *X.V();
    int N = V.N;
    auto fail = [&](const std::string& w) {
        r.status = CheckStatus::Fail;
        r.witness = w;
    };
    auto second_T = [&](int m, IndexSet I, int a, int b) {
        MElem acc(X.ctx1(), X.V());
        Vec e(V.dim(), Rat(0));
        e[b] = 1;
        Vec Te = V.apply_T(e);
        for (int k = 0; k < V.dim(); ++k)
            if (!is_zero(Te[k]))
                acc.add_scaled(X.value(m, I, a, k), Te[k]);
        return acc;
    };
    auto second_S = [&](int i, int m, IndexSet I, int a, int b) {
        MElem acc(X.ctx1(), X.V());
        Vec e(V.dim(), Rat(0));
        e[b] = 1;
        Vec Se = V.apply_S(i, e);
        for (int k = 0; k < V.dim(); ++k)
            if (!is_zero(Se[k]))
                acc.add_scaled(X.value(m, I, a, k), Se[k]);
        return acc;
    };
    auto first_S = [&](int i, int m, IndexSet I, int a, int b) {
        MElem acc(X.ctx1(), X.V());
        Vec e(V.dim(), Rat(0));
        e[a] = 1;
        Vec Se = V.apply_S(i, e);
        for (int k = 0; k < V.dim(); ++k)
            if (!is_zero(Se[k]))
                acc.add_scaled(X.value(m, I, k, b), Se[k]);
        return acc;
    };
    for (int m = 0; m <= X.max_pole(); ++m)
        for (IndexSet I = 0; I <= full_set(N); ++I)
            for (int a = 0; a < V.dim() && r.passed(); ++a)
                for (int b = 0; b < V.dim() && r.passed(); ++b) {
                    const MElem& cur = X.value(m, I, a, b);
                    std::string at = "(m=" + std::to_string(m) + ",I=" + std::to_string(I) +
                                     "," + V.names[a] + "," + V.names[b] + ")";
                    int pf = popcount(I) & 1;  // parity of f
                    int pv = (V.parity(a) + V.parity(b)) & 1;
                    // multiplication by z_{1,2}: f z = z^{-m+1} zeta^I
                    if (m >= 1) {
                        MElem lhs = X.value(m - 1, I, a, b);
                        MElem rhs = pch2_right_action(X, cur, {DiffOp::Tag::MulZDiff, 1, 2, 0});
                        if (!(lhs == rhs))
                            fail("mul z_{1,2} at " + at);
                    }
                    // multiplication by zeta^i
                    for (int i = 1; i <= N && r.passed(); ++i) {
                        MElem rhs =
                            pch2_right_action(X, cur, {DiffOp::Tag::MulZetaDiff, 1, 2, i});
                        MElem lhs(X.ctx1(), X.V());
                        if (!(I & (1u << (i - 1)))) {
                            // zeta^I zeta^i = (-1)^{#(I > i)} zeta^{I u i}
                            int above = popcount(I & ~((1u << i) - 1));
                            lhs = X.value(m, I | (1u << (i - 1)), a, b).scaled(Rat(pm(above)));
                        }
                        if (!(lhs == rhs))
                            fail("mul zeta^" + std::to_string(i) + " at " + at);
                    }
                    // d_{z_1}: X(T^{(1)}v, f) - X(v, d_{z_1} f) = X(v,f).d_{z_1}
                    if (m + 1 <= X.max_pole() && r.passed()) {
                        MElem lhs = pch2_first_T(X, V, m, I, a, b) +
                                    X.value(m + 1, I, a, b).scaled(Rat(m));
                        MElem rhs = pch2_right_action(X, cur, {DiffOp::Tag::DZ, 1, 0, 0});
                        if (!(lhs == rhs))
                            fail("d_z1 at " + at);
                        // d_{z_2}: d_{z_2} f = +m z^{-m-1} zeta^I
                        MElem lhs2 = second_T(m, I, a, b) - X.value(m + 1, I, a, b).scaled(Rat(m));
                        MElem rhs2 = pch2_right_action(X, cur, {DiffOp::Tag::DZ, 2, 0, 0});
                        if (r.passed() && !(lhs2 == rhs2))
                            fail("d_z2 at " + at);
                    }
                    // odd derivatives
                    for (int i = 1; i <= N && r.passed(); ++i) {
                        // derivative of f = z^{-m} zeta^I by slot-1 odd derivative
                        auto dzeta_f = [&](int slot) {
                            // returns list of (coeff, m', I')
                            std::vector<std::tuple<Rat, int, IndexSet>> out;
                            int s = slot == 1 ? 1 : -1;
                            if (I & (1u << (i - 1))) {
                                int before = popcount(I & ((1u << (i - 1)) - 1));
                                out.push_back({Rat(s * pm(before)), m, I & ~(1u << (i - 1))});
                            }
                            if (V.flavor == Flavor::K && m != 0) {
                                // D(z^{-m}) = -m z^{-m-1} zeta^i; zeta^i zeta^I insert
                                if (!(I & (1u << (i - 1)))) {
                                    int below = popcount(I & ((1u << (i - 1)) - 1));
                                    out.push_back({Rat(-m * pm(below)), m + 1, I | (1u << (i - 1))});
                                }
                            }
                            return out;
                        };
                        int slots[2] = {1, 2};
                        for (int slot : slots) {
                            if (!r.passed())
                                break;
                            bool need_higher = V.flavor == Flavor::K && m + 1 > X.max_pole();
                            if (need_higher)
                                continue;
                            MElem mod_side = slot == 1
                                                 ? first_S(i, m, I, a, b).scaled(Rat(pm(pv + pf)))
                                                 : second_S(i, m, I, a, b)
                                                       .scaled(Rat(pm(V.parity(a) + X.shift() +
                                                                      pv + pf)));
                            MElem fun_side(X.ctx1(), X.V());
                            for (auto& [cc, mm, II] : dzeta_f(slot))
                                fun_side.add_scaled(X.value(mm, II, a, b), cc * Rat(pm(pf)));
                            MElem lhs = mod_side - fun_side;
                            MElem rhs = pch2_right_action(
                                X, cur, {DiffOp::Tag::DZeta, slot, 0, i});
                            if (!(lhs == rhs))
                                fail("d_zeta" + std::to_string(i) + " slot " +
                                     std::to_string(slot) + " at " + at);
                        }
                    }
                }
    return r;
}

CheckResult check_vacuum(const VAStructure& S, int vac)
{
    CheckResult r{"vacuum", CheckStatus::Pass, ""};
    const auto& V = *S.V();
    try {
        for (int a = 0; a < V.dim(); ++a) {
            MElem ea = S.gen_elem(a);
            MElem v = S.gen_elem(vac);
            if (!(S.mu_elems(ea, v) == ea) || !(S.mu_elems(v, ea) == ea)) {
                r.status = CheckStatus::Fail;
                r.witness = V.names[a];
                return r;
            }
        }
    } catch (const NotEvaluable& e) {
        r.status = CheckStatus::NotEvaluable;
        r.witness = e.what();
    }
    return r;
}

}  // namespace svao
