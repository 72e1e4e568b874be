#include "svao/conformal.hpp"

#include <sstream>

namespace svao {

namespace {

int pm(int exp) { return (exp & 1) ? -1 : 1; }

}  // namespace

LCAStructure::LCAStructure(CarrierPtr V, CtxPtr ctx1) : V_(std::move(V)), ctx1_(std::move(ctx1))
{
    if (ctx1_->n_vars() != 1 || !ctx1_->has_nabla)
        throw std::invalid_argument("LCAStructure: ctx1 must be a one-variable nabla context");
    if (ctx1_->flavor != V_->flavor || ctx1_->N != V_->N)
        throw std::invalid_argument("LCAStructure: context/carrier flavor mismatch");
    zero_ = MElem(ctx1_, V_);
}

void LCAStructure::set_entry(int ga, int gb, MElem value)
{
    table_[{ga, gb}] = value.normalized();
}

const MElem& LCAStructure::entry(int ga, int gb) const
{
    auto it = table_.find({ga, gb});
    return it == table_.end() ? zero_ : it->second;
}

CheckResult LCAStructure::check_parity_legal() const
{
    CheckResult r{"parity-legal", CheckStatus::Pass, ""};
    for (auto& [key, val] : table_) {
        int want = (V_->parity(key.first) + V_->parity(key.second) + nbar()) & 1;
        int got = val.parity_or(want, false);
        if (got == -2 || (got >= 0 && got != want)) {
            r.status = CheckStatus::Fail;
            r.witness = "bracket(" + V_->names[key.first] + "," + V_->names[key.second] +
                        ") has wrong parity";
            return r;
        }
    }
    return r;
}

namespace {

// bilinear core on a bare pair (nabla word on generator), peeling the words
// by the sesquilinearity rules; `var` names the output supervariable.
MElem sesq_words(const SesqMap& f, const NablaSplit& wa, int ga, const NablaSplit& wb, int gb,
                 const CtxPtr& out, int var)
{
    const auto& ctx = *out;
    // first slot: peel T's then ascending S's, leftmost first
    if (wa.t_exp > 0) {
        NablaSplit wa2 = wa;
        wa2.t_exp -= 1;
        MElem rec = sesq_words(f, wa2, ga, wb, gb, out, var);
        return mul_poly(-ctx.lambda(var), rec);  // [Ta_L b] = -lambda [a_L b]
    }
    if (wa.sset) {
        int i = __builtin_ctz(wa.sset) + 1;
        NablaSplit wa2 = wa;
        wa2.sset &= ~(1u << (i - 1));
        wa2.word_parity ^= 1;
        MElem rec = sesq_words(f, wa2, ga, wb, gb, out, var);
        // [S^i a_L b] = -(-1)^N theta^i [a_L b]
        return mul_poly(ctx.theta(var, i) * Rat(-pm(f.N)), rec);
    }
    int pa = f.A->parity(ga);
    if (wb.t_exp > 0) {
        NablaSplit wb2 = wb;
        wb2.t_exp -= 1;
        MElem rec = sesq_words(f, wa, ga, wb2, gb, out, var);
        // [a_L Tb] = (lambda + T) [a_L b]
        return mul_poly(ctx.lambda(var) + ctx.T(), rec);
    }
    if (wb.sset) {
        int i = __builtin_ctz(wb.sset) + 1;
        NablaSplit wb2 = wb;
        wb2.sset &= ~(1u << (i - 1));
        wb2.word_parity ^= 1;
        MElem rec = sesq_words(f, wa, ga, wb2, gb, out, var);
        // [a_L S^i b] = (-1)^{p(a)+Nbar} (theta^i + S^i) [a_L b]
        int sgn = pm(pa + f.nbar());
        return mul_poly((ctx.theta(var, i) + ctx.S(i)) * Rat(sgn), rec);
    }
    return f.base(ga, gb, out, var);
}

}  // namespace

MElem sesq_bilinear(const SesqMap& f, const MElem& P, const MElem& Q, const CtxPtr& out, int var)
{
    const auto& ctx = *out;
    MElem r(out, f.Out);
    int nb = f.nbar();
    for (auto& [kp, cp] : P.terms()) {
        NablaSplit sp = split_nabla(ctx, kp.first);
        int arg1_par = (sp.word_parity + f.A->parity(kp.second)) & 1;
        int s1 = pm(sp.lam.parity() * nb);
        for (auto& [kq, cq] : Q.terms()) {
            NablaSplit sq = split_nabla(ctx, kq.first);
            int s2 = pm(sq.lam.parity() * ((nb + arg1_par) & 1));
            MElem base = sesq_words(f, sp, kp.second, sq, kq.second, out, var);
            if (base.is_zero())
                continue;
            Poly coeff(ctx.table());
            coeff.add_term(sp.lam, Rat(1));
            Poly coeffq(ctx.table());
            coeffq.add_term(sq.lam, Rat(1));
            MElem term = mul_poly(coeff * coeffq, base);
            r.add_scaled(term, cp * cq * Rat(s1 * s2));
        }
    }
    return r.normalized();
}

MElem integral_pairing(int N, const PairFn& lam, const DotFn& dot, const MElem& x, const MElem& y,
                       const CtxPtr& out, int var)
{
    const auto& ctx = *out;
    MElem r;
    bool started = false;
    for (IndexSet I = 0; I <= full_set(N); ++I) {
        Poly word = Poly::one(x.ctx()->table());
        for (int i = 1; i <= N; ++i)
            if (I & (1u << (i - 1)))
                word = word * x.ctx()->S(i);
        MElem sx = act_nabla(word, x);
        if (sx.is_zero())
            continue;
        MElem d = dot(sx, y);
        if (!started) {
            r = MElem(out, d.carrier());
            started = true;
        }
        if (d.is_zero())
            continue;
        int sgn = pm(popcount(I) * (N + 1)) * sigma_compl(I, N);
        Poly th = ctx.theta_set(var, full_set(N) & ~I);
        r.add_scaled(mul_poly(th, extend_to_ctx(d, out)), Rat(sgn));
    }
    MElem br = lam(x, y, out, var);
    if (!started)
        r = MElem(out, br.carrier());
    r = r + antideriv_lambda(br, var);
    return r.normalized();
}

namespace {

SesqMap bracket_map(const LCAStructure& L)
{
    SesqMap f;
    f.A = f.B = f.Out = L.V();
    f.N = L.N();
    f.base = [&L](int ga, int gb, const CtxPtr& out, int var) {
        const MElem& e = L.entry(ga, gb);
        if (e.is_zero())
            return MElem(out, L.V());
        AffineImage img;
        img.parts.push_back({1, var});
        return subst_var(e, 0, img, out);
    };
    return f;
}

}  // namespace

MElem lam_bracket(const LCAStructure& L, const MElem& x, const MElem& y, const CtxPtr& out,
                  int var)
{
    return lam_bracket_poly(L, extend_to_ctx(x, out), extend_to_ctx(y, out), out, var);
}

MElem lam_bracket_poly(const LCAStructure& L, const MElem& P, const MElem& Q, const CtxPtr& out,
                       int var)
{
    return sesq_bilinear(bracket_map(L), P, Q, out, var);
}

MElem bracket_skew_side(const LCAStructure& L, const MElem& x, const MElem& y, const CtxPtr& out,
                        int var)
{
    MElem b = lam_bracket(L, x, y, out, var);
    AffineImage img;
    img.parts.push_back({-1, var});
    img.parts.push_back({-1, -1});
    return subst_var(b, var, img, out);
}

CheckResult check_sesquilinearity(const LCAStructure& L)
{
    CheckResult r{"sesquilinearity", CheckStatus::Pass, ""};
    const auto& V = *L.V();
    if (!V.finite)
        return r;  // holds by construction of the extension
    auto out = L.ctx1();
    const auto& ctx = *out;
    int d = V.dim();
    auto fail = [&](const std::string& w) {
        r.status = CheckStatus::Fail;
        r.witness = w;
    };
    auto bracket_vec = [&](const Vec& a, const Vec& b) {
        MElem acc(out, L.V());
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (!is_zero(a[i]) && !is_zero(b[j]))
                    acc.add_scaled(L.entry(i, j), a[i] * b[j]);
        return acc;
    };
    for (int a = 0; a < d && r.passed(); ++a) {
        for (int b = 0; b < d && r.passed(); ++b) {
            Vec ea(d, Rat(0)), eb(d, Rat(0));
            ea[a] = 1;
            eb[b] = 1;
            Vec Ta = V.apply_T(ea), Tb = V.apply_T(eb);
            MElem base = L.entry(a, b);
            // [Ta_L b] = -lambda [a_L b]
            if (!(bracket_vec(Ta, eb) == mul_poly(-ctx.lambda(0), base)))
                fail("[T " + V.names[a] + " _L " + V.names[b] + "]");
            // [a_L Tb] = (lambda + T)[a_L b]
            else if (!(bracket_vec(ea, Tb) == mul_poly(ctx.lambda(0) + ctx.T(), base).normalized()))
                fail("[" + V.names[a] + " _L T " + V.names[b] + "]");
            for (int i = 1; i <= V.N && r.passed(); ++i) {
                Vec Sa = V.apply_S(i, ea), Sb = V.apply_S(i, eb);
                if (!(bracket_vec(Sa, eb) ==
                      mul_poly(ctx.theta(0, i) * Rat(-pm(V.N)), base).normalized()))
                    fail("[S" + std::to_string(i) + " " + V.names[a] + " _L " + V.names[b] + "]");
                else if (!(bracket_vec(ea, Sb) ==
                           mul_poly((ctx.theta(0, i) + ctx.S(i)) *
                                        Rat(pm(V.parity(a) + L.nbar())),
                                    base)
                               .normalized()))
                    fail("[" + V.names[a] + " _L S" + std::to_string(i) + " " + V.names[b] + "]");
            }
        }
    }
    return r;
}

CheckResult check_skew(const LCAStructure& L)
{
    CheckResult r{"skew-symmetry", CheckStatus::Pass, ""};
    const auto& V = *L.V();
    auto out = L.ctx1();
    for (int a = 0; a < V.dim(); ++a) {
        for (int b = 0; b < V.dim(); ++b) {
            MElem ea = MElem::gen(make_context(V.flavor, V.N, {}, true), L.V(), a);
            MElem eb = MElem::gen(ea.ctx(), L.V(), b);
            MElem lhs = lam_bracket(L, eb, ea, out, 0);
            MElem rhs = bracket_skew_side(L, ea, eb, out, 0);
            int sgn = -pm(V.parity(a) * V.parity(b) + L.nbar());
            MElem defect = lhs - rhs.scaled(Rat(sgn));
            if (!defect.is_zero()) {
                r.status = CheckStatus::Fail;
                std::ostringstream os;
                os << "(" << V.names[b] << "," << V.names[a] << "): defect " << defect.str();
                r.witness = os.str();
                return r;
            }
        }
    }
    return r;
}

MElem jacobi_defect(const LCAStructure& L, int ga, int gb, int gc, const CtxPtr& ctx2)
{
    const auto& V = *L.V();
    auto ctx0 = make_context(V.flavor, V.N, {}, true);
    MElem a = MElem::gen(ctx0, L.V(), ga);
    MElem b = MElem::gen(ctx0, L.V(), gb);
    MElem c = MElem::gen(ctx0, L.V(), gc);
    int nb = L.nbar();
    int pa = V.parity(ga), pb = V.parity(gb);

    MElem inner_bc = lam_bracket(L, b, c, ctx2, 1);
    MElem t1 = lam_bracket_poly(L, extend_to_ctx(a, ctx2), inner_bc, ctx2, 0);

    // middle term through an auxiliary variable g, then g -> L1+L2
    auto ctx3 = make_context(V.flavor, V.N, {ctx2->vars[0], ctx2->vars[1], "g"}, true);
    MElem inner_ab = lam_bracket(L, a, b, ctx2, 0);
    MElem mid =
        lam_bracket_poly(L, extend_to_ctx(inner_ab, ctx3), extend_to_ctx(c, ctx3), ctx3, 2);
    AffineImage img;
    img.parts.push_back({1, 0});
    img.parts.push_back({1, 1});
    MElem t2 = subst_var(mid, 2, img, ctx2);

    MElem inner_ac = lam_bracket(L, a, c, ctx2, 0);
    MElem t3 = lam_bracket_poly(L, extend_to_ctx(b, ctx2), inner_ac, ctx2, 1);

    return t1 - t2.scaled(Rat(pm((pa + nb) * nb))) - t3.scaled(Rat(pm((pa + nb) * (pb + nb))));
}

CheckResult check_jacobi(const LCAStructure& L)
{
    CheckResult r{"jacobi", CheckStatus::Pass, ""};
    const auto& V = *L.V();
    auto ctx2 = make_context(V.flavor, V.N, {"1", "2"}, true);
    for (int a = 0; a < V.dim(); ++a)
        for (int b = 0; b < V.dim(); ++b)
            for (int c = 0; c < V.dim(); ++c) {
                MElem d = jacobi_defect(L, a, b, c, ctx2);
                if (!d.is_zero()) {
                    r.status = CheckStatus::Fail;
                    std::ostringstream os;
                    os << "(" << V.names[a] << "," << V.names[b] << "," << V.names[c]
                       << "): defect " << d.str();
                    r.witness = os.str();
                    return r;
                }
            }
    return r;
}

CheckReport check_lca_axioms(const LCAStructure& L)
{
    CheckReport rep;
    rep.add(L.check_parity_legal());
    rep.add(check_sesquilinearity(L));
    rep.add(check_skew(L));
    rep.add(check_jacobi(L));
    return rep;
}

// --- Ch elements ------------------------------------------------------------

ChElement::ChElement(CarrierPtr V, int arity, int shift, int par)
    : V_(std::move(V)), arity_(arity), shift_(shift), par_(par)
{
    if (arity < 1)
        throw std::invalid_argument("ChElement: arity >= 1");
    std::vector<std::string> vars;
    for (int k = 1; k < arity; ++k)
        vars.push_back(std::to_string(k));
    ctx_ = make_context(V_->flavor, V_->N, vars, true);
    zero_ = MElem(ctx_, V_);
}

void ChElement::set_value(const std::vector<int>& gens, MElem v)
{
    if (static_cast<int>(gens.size()) != arity_)
        throw std::invalid_argument("ChElement::set_value: tuple size");
    MElem n = v.normalized();
    if (n.is_zero())
        values_.erase(gens);
    else
        values_[gens] = std::move(n);
}

const MElem& ChElement::value(const std::vector<int>& gens) const
{
    auto it = values_.find(gens);
    return it == values_.end() ? zero_ : it->second;
}

bool ChElement::is_zero() const
{
    for (auto& [k, v] : values_)
        if (!v.is_zero())
            return false;
    return true;
}

bool ChElement::operator==(const ChElement& o) const
{
    if (arity_ != o.arity_)
        return false;
    auto tuples = [&](const ChElement& e) { return e.values_; };
    for (auto& [k, v] : tuples(*this))
        if (!(o.value(k) == v))
            return false;
    for (auto& [k, v] : tuples(o))
        if (!(value(k) == v))
            return false;
    return true;
}

ChElement ch_unit(const CarrierPtr& V, int shift)
{
    ChElement u(V, 1, shift, 0);
    auto ctx0 = u.ctx();
    for (int g = 0; g < V->dim(); ++g)
        u.set_value({g}, MElem::gen(ctx0, V, g));
    return u;
}

ChElement ch_add(const ChElement& A, const ChElement& B)
{
    ChElement r = A;
    std::vector<int> tuple(A.arity(), 0);
    int d = A.V()->dim();
    while (true) {
        MElem v = A.value(tuple) + B.value(tuple);
        r.set_value(tuple, v);
        int k = A.arity() - 1;
        while (k >= 0 && tuple[k] == d - 1)
            tuple[k--] = 0;
        if (k < 0)
            break;
        ++tuple[k];
    }
    return r;
}

ChElement ch_scaled(const ChElement& A, const Rat& c)
{
    ChElement r(A.V(), A.arity(), A.shift(), A.par());
    std::vector<int> tuple(A.arity(), 0);
    int d = A.V()->dim();
    while (true) {
        r.set_value(tuple, A.value(tuple).scaled(c));
        int k = A.arity() - 1;
        while (k >= 0 && tuple[k] == d - 1)
            tuple[k--] = 0;
        if (k < 0)
            break;
        ++tuple[k];
    }
    return r;
}

ChElement ch_sym_action(const ChElement& X, const Perm& sigma)
{
    int n = X.arity();
    if (static_cast<int>(sigma.size()) != n)
        throw std::invalid_argument("ch_sym_action: arity mismatch");
    ChElement r(X.V(), n, X.shift(), X.par());
    int d = X.V()->dim();
    Perm inv = perm_inverse(sigma);
    std::vector<std::string> vars_n;
    for (int k = 1; k <= n; ++k)
        vars_n.push_back(std::to_string(k));
    auto ctx_n = make_context(X.V()->flavor, X.V()->N, vars_n, true);

    std::vector<int> tuple(n, 0);
    while (true) {
        std::vector<int> permuted(n);
        for (int k = 0; k < n; ++k)
            permuted[k] = tuple[inv[k]];
        std::vector<int> pars(n);
        for (int k = 0; k < n; ++k)
            pars[k] = X.shifted_parity(tuple[k]);
        int sgn = koszul_sign(sigma, pars);
        const MElem& val = X.value(permuted);
        if (!val.is_zero()) {
            // restore the eliminated slot, then relabel: slot k carries
            // Lambda_{sigma^{-1}(k)}
            MElem un = unreduce_nabla(val, ctx_n);
            // permute: slot-variable k (name std::to_string(k)) -> Lambda_{inv?}
            // X^{sigma}_{L_1..L_n} = X_{L_{sigma^{-1}(1)},..,L_{sigma^{-1}(n)}}
            auto full_ctx = un.ctx();
            std::vector<Poly> ev(full_ctx->table()->n_even(), Poly::zero(full_ctx->table()));
            std::vector<Poly> od(full_ctx->table()->n_odd(), Poly::zero(full_ctx->table()));
            for (int k = 0; k < n; ++k) {
                int target = inv[k];  // slot k+1 carries Lambda_{inv[k]+1}
                ev[full_ctx->lambda_id(k)] = full_ctx->lambda(target);
                for (int i = 1; i <= full_ctx->N; ++i)
                    od[full_ctx->theta_id(k, i)] = full_ctx->theta(target, i);
            }
            ev[full_ctx->T_id()] = full_ctx->T();
            for (int i = 1; i <= full_ctx->N; ++i)
                od[full_ctx->S_id(i)] = full_ctx->S(i);
            MElem permuted_val(full_ctx, X.V());
            for (auto& [k2, c2] : un.terms()) {
                Poly p(full_ctx->table());
                p.add_term(k2.first, c2);
                Poly q = p.substitute(full_ctx->table(), ev, od);
                for (auto& [m2, cc2] : q.terms())
                    permuted_val.add_term(m2, k2.second, cc2);
            }
            MElem red = reduce_nabla(permuted_val, n - 1);
            // reduce_nabla dropped the last variable; transport names back to 1..n-1
            MElem out = extend_to_ctx(red, r.ctx());
            r.set_value(tuple, out.scaled(Rat(sgn)));
        }
        int k = n - 1;
        while (k >= 0 && tuple[k] == d - 1)
            tuple[k--] = 0;
        if (k < 0)
            break;
        ++tuple[k];
    }
    return r;
}

ChElement ch_compose(const ChElement& X, int pos, const ChElement& Y)
{
    if (pos < 1 || pos > X.arity())
        throw std::invalid_argument("ch_compose: position out of range");
    if (X.shift() != Y.shift())
        throw std::invalid_argument("ch_compose: shift mismatch");
    int m = X.arity(), nY = Y.arity();
    int n = m + nY - 1;
    if (n > 4)
        throw std::invalid_argument("ch_compose: arity beyond configured bound");
    const auto& V = *X.V();
    int d = V.dim();
    ChElement r(X.V(), n, X.shift(), (X.par() + Y.par()) & 1);
    auto out_ctx = r.ctx();

    // block sums Lambda'_j in the reduced coordinates of out_ctx:
    // Lambda_n := -Lambda_1-..-Lambda_{n-1}-nabla
    auto slot_lambda = [&](int s) {  // s in 1..n
        if (s < n)
            return out_ctx->lambda(s - 1);
        Poly p = -out_ctx->T();
        for (int k = 0; k < n - 1; ++k)
            p = p - out_ctx->lambda(k);
        return p;
    };
    auto slot_theta = [&](int s, int i) {
        if (s < n)
            return out_ctx->theta(s - 1, i);
        Poly p = -out_ctx->S(i);
        for (int k = 0; k < n - 1; ++k)
            p = p - out_ctx->theta(k, i);
        return p;
    };
    // block j (1-based) slots
    auto block_slots = [&](int j) {
        std::vector<int> slots;
        if (j < pos)
            slots.push_back(j);
        else if (j == pos)
            for (int k = 0; k < nY; ++k)
                slots.push_back(pos + k);
        else
            slots.push_back(j + nY - 1);
        return slots;
    };
    std::vector<Poly> blam(m + 1, Poly::zero(out_ctx->table()));
    std::vector<std::vector<Poly>> bth(m + 1, std::vector<Poly>(V.N + 1, Poly::zero(out_ctx->table())));
    for (int j = 1; j <= m; ++j) {
        for (int s : block_slots(j)) {
            blam[j] = blam[j] + slot_lambda(s);
            for (int i = 1; i <= V.N; ++i)
                bth[j][i] = bth[j][i] + slot_theta(s, i);
        }
    }
    // base transport of X's stored values: local slot variable k -> Lambda'_k
    auto transport_X = [&](const MElem& val) {
        auto src = val.ctx();
        std::vector<Poly> ev(src->table()->n_even(), Poly::zero(out_ctx->table()));
        std::vector<Poly> od(src->table()->n_odd(), Poly::zero(out_ctx->table()));
        for (int k = 0; k < m - 1; ++k) {
            ev[src->lambda_id(k)] = blam[k + 1];
            for (int i = 1; i <= V.N; ++i)
                od[src->theta_id(k, i)] = bth[k + 1][i];
        }
        ev[src->T_id()] = out_ctx->T();
        for (int i = 1; i <= V.N; ++i)
            od[src->S_id(i)] = out_ctx->S(i);
        MElem out(out_ctx, X.V());
        for (auto& [k2, c2] : val.terms()) {
            Poly p(src->table());
            p.add_term(k2.first, c2);
            Poly q = p.substitute(out_ctx->table(), ev, od);
            for (auto& [m2, cc2] : q.terms())
                out.add_term(m2, k2.second, cc2);
        }
        return out;
    };
    // transport of Y's stored values: local slot k -> global slot pos-1+k
    auto transport_Y = [&](const MElem& val) {
        auto src = val.ctx();
        std::vector<Poly> ev(src->table()->n_even(), Poly::zero(out_ctx->table()));
        std::vector<Poly> od(src->table()->n_odd(), Poly::zero(out_ctx->table()));
        for (int k = 0; k < nY - 1; ++k) {
            int gs = pos + k;  // global slot (1-based), always <= n-1
            ev[src->lambda_id(k)] = out_ctx->lambda(gs - 1);
            for (int i = 1; i <= V.N; ++i)
                od[src->theta_id(k, i)] = out_ctx->theta(gs - 1, i);
        }
        ev[src->T_id()] = out_ctx->T();
        for (int i = 1; i <= V.N; ++i)
            od[src->S_id(i)] = out_ctx->S(i);
        MElem out(out_ctx, Y.V());
        for (auto& [k2, c2] : val.terms()) {
            Poly p(src->table());
            p.add_term(k2.first, c2);
            Poly q = p.substitute(out_ctx->table(), ev, od);
            for (auto& [m2, cc2] : q.terms())
                out.add_term(m2, k2.second, cc2);
        }
        return out;
    };

    std::vector<int> tuple(n, 0);
    while (true) {
        // inner value on the pos-block
        std::vector<int> inner(tuple.begin() + (pos - 1), tuple.begin() + (pos - 1) + nY);
        MElem innerval = transport_Y(Y.value(inner));
        // odot sign: arguments of blocks before pos cross Y
        int before_par = 0;
        for (int k = 0; k < pos - 1; ++k)
            before_par ^= X.shifted_parity(tuple[k]);
        MElem acc(out_ctx, X.V());
        for (auto& [kk, cc] : innerval.terms()) {
            NablaSplit sp = split_nabla(*out_ctx, kk.first);
            // pull the Lambda coefficient and peel the word, both crossing
            // X and the stripped arguments before slot pos
            int cross = (X.par() + before_par) & 1;
            int sgn = pm(sp.lam.parity() * cross) * pm(sp.word_parity * cross);
            // word image: phi(-Lambda'_pos) in word order T^t S^{i1} S^{i2}...
            Poly factor = Poly::one(out_ctx->table());
            for (int t = 0; t < sp.t_exp; ++t)
                factor = factor * (-blam[pos]);
            for (int i = 1; i <= V.N; ++i)
                if (sp.sset & (1u << (i - 1)))
                    factor = factor * (-bth[pos][i]);
            // base value of X with slot pos replaced by the stripped generator
            std::vector<int> outer(m);
            for (int j = 1; j <= m; ++j) {
                if (j < pos)
                    outer[j - 1] = tuple[j - 1];
                else if (j == pos)
                    outer[j - 1] = kk.second;
                else
                    outer[j - 1] = tuple[j + nY - 2];
            }
            MElem base = transport_X(X.value(outer));
            Poly coeff(out_ctx->table());
            coeff.add_term(sp.lam, Rat(1));
            MElem term = mul_poly(coeff * factor, base);
            acc.add_scaled(term, cc * Rat(sgn));
        }
        int odot_sign = pm(before_par * Y.par());
        r.set_value(tuple, acc.scaled(Rat(odot_sign)));
        int k = n - 1;
        while (k >= 0 && tuple[k] == d - 1)
            tuple[k--] = 0;
        if (k < 0)
            break;
        ++tuple[k];
    }
    return r;
}

ChElement ch_box(const ChElement& X, const ChElement& Y)
{
    int nn = X.arity() - 1;
    int mm = Y.arity() - 1;
    ChElement comp = ch_compose(X, 1, Y);
    ChElement r(X.V(), comp.arity(), X.shift(), comp.par());
    for (auto& s : shuffles(mm + 1, nn))
        r = ch_add(r, ch_sym_action(comp, perm_inverse(s)));
    return r;
}

ChElement lca_to_mc(const LCAStructure& L)
{
    const auto& V = *L.V();
    int shift = (V.N + 1) & 1;
    ChElement X(L.V(), 2, shift, 1);
    for (int a = 0; a < V.dim(); ++a)
        for (int b = 0; b < V.dim(); ++b) {
            const MElem& e = L.entry(a, b);
            if (e.is_zero())
                continue;
            // R_X(a,b) = (-1)^{p(a)(Nbar+1)} [a_L b]
            int sgn = pm(V.parity(a) * ((L.nbar() + 1) & 1));
            AffineImage img;
            img.parts.push_back({1, 0});
            MElem v = subst_var(e, 0, img, X.ctx());
            X.set_value({a, b}, v.scaled(Rat(sgn)));
        }
    return X;
}

LCAStructure mc_to_lca(const ChElement& X, const CtxPtr& ctx1)
{
    LCAStructure L(X.V(), ctx1);
    const auto& V = *X.V();
    for (int a = 0; a < V.dim(); ++a)
        for (int b = 0; b < V.dim(); ++b) {
            const MElem& v = X.value({a, b});
            if (v.is_zero())
                continue;
            int sgn = pm(V.parity(a) * (((V.N & 1) + 1) & 1));
            AffineImage img;
            img.parts.push_back({1, 0});
            L.set_entry(a, b, subst_var(v, 0, img, ctx1).scaled(Rat(sgn)));
        }
    return L;
}

bool mc_check_lca(const LCAStructure& L)
{
    ChElement X = lca_to_mc(L);
    return ch_box(X, X).is_zero();
}

}  // namespace svao
