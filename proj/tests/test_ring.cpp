#include <doctest.h>

#include "svao/context.hpp"

#include <random>

using namespace svao;

namespace {

Poly random_poly(const SuperContext& ctx, std::mt19937_64& rng, int max_deg)
{
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> expn(0, max_deg);
    Poly p = Poly::zero(ctx.table());
    for (int t = 0; t < 4; ++t) {
        Mono m;
        m.ev.assign(ctx.table()->n_even(), 0);
        int budget = max_deg;
        for (int v = 0; v < ctx.n_vars(); ++v) {
            int e = expn(rng) % (budget + 1);
            m.ev[ctx.lambda_id(v)] = e;
            budget -= e;
        }
        for (int v = 0; v < ctx.n_vars() && budget > 0; ++v)
            for (int i = 1; i <= ctx.N && budget > 0; ++i)
                if (rng() & 1) {
                    m.odd |= 1u << ctx.theta_id(v, i);
                    --budget;
                }
        p.add_term(m, Rat(coef(rng)));
    }
    return p;
}

}  // namespace

TEST_CASE("sigma signs")
{
    CHECK(sigma(0b001, 0b010) == 1);   // {1},{2}
    CHECK(sigma(0b010, 0b001) == -1);  // {2},{1}
    CHECK(sigma(0b001, 0b001) == 0);   // overlap
    CHECK(sigma(0, 0b111) == 1);
    CHECK(sigma_compl(0b010, 3) == -1);  // t2 t1 t3 = -t1 t2 t3
}

TEST_CASE("W flavor anticommutation and odd squares")
{
    auto ctx = make_context(Flavor::W, 2, {"1"});
    Poly t1 = ctx->theta(0, 1), t2 = ctx->theta(0, 2);
    CHECK(t1 * t2 == ctx->theta_set(0, 0b11));
    CHECK(t2 * t1 == -ctx->theta_set(0, 0b11));
    CHECK((t1 * t1).is_zero());
    auto ctx1 = make_context(Flavor::W, 1, {"1"});
    Poly lt = ctx1->lambda(0) * ctx1->theta(0, 1);
    CHECK((lt * lt).is_zero());
}

TEST_CASE("K flavor Clifford relation")
{
    auto ctx = make_context(Flavor::K, 1, {"1"});
    Poly t = ctx->theta(0, 1);
    CHECK(t * t == -ctx->lambda(0));

    // exhaustive for N <= 3: lambda central, theta relations across variables
    for (int N = 1; N <= 3; ++N) {
        auto c2 = make_context(Flavor::K, N, {"1", "2"});
        for (int i = 1; i <= N; ++i) {
            CHECK(c2->lambda(0) * c2->theta(0, i) == c2->theta(0, i) * c2->lambda(0));
            for (int j = 1; j <= N; ++j)
                for (int va = 0; va < 2; ++va)
                    for (int vb = 0; vb < 2; ++vb) {
                        Poly anti = c2->theta(va, i) * c2->theta(vb, j) +
                                    c2->theta(vb, j) * c2->theta(va, i);
                        Poly expect = (va == vb && i == j) ? c2->lambda(va) * Rat(-2)
                                                           : Poly::zero(c2->table());
                        CHECK(anti == expect);
                    }
        }
    }
}

TEST_CASE("associativity and supercommutativity, random")
{
    std::mt19937_64 rng(7);
    for (Flavor f : {Flavor::W, Flavor::K})
        for (int N : {1, 2}) {
            auto ctx = make_context(f, N, {"1", "2"});
            for (int trial = 0; trial < 60; ++trial) {
                Poly a = random_poly(*ctx, rng, 4);
                Poly b = random_poly(*ctx, rng, 4);
                Poly c = random_poly(*ctx, rng, 4);
                CHECK((a * b) * c == a * (b * c));
                if (f == Flavor::W) {
                    for (auto& [ma, ca] : a.terms())
                        for (auto& [mb, cb] : b.terms()) {
                            Poly pa(ctx->table()), pb(ctx->table());
                            pa.add_term(ma, ca);
                            pb.add_term(mb, cb);
                            int s = (ma.parity() && mb.parity()) ? -1 : 1;
                            CHECK(pa * pb == (pb * pa) * Rat(s));
                        }
                }
            }
        }
}

TEST_CASE("graded derivatives")
{
    auto ctx = make_context(Flavor::W, 2, {"1"});
    Poly p = ctx->lambda(0).pow(2) * ctx->theta_set(0, 0b11);
    CHECK(p.deriv_even(ctx->lambda_id(0)) ==
          ctx->lambda(0) * ctx->theta_set(0, 0b11) * Rat(2));
    Poly t12 = ctx->theta_set(0, 0b11);
    CHECK(t12.deriv_odd(ctx->theta_id(0, 1)) == ctx->theta(0, 2));
    CHECK(t12.deriv_odd(ctx->theta_id(0, 2)) == -ctx->theta(0, 1));

    std::mt19937_64 rng(11);
    for (Flavor f : {Flavor::W, Flavor::K}) {
        auto c = make_context(f, 2, {"1", "2"});
        for (int trial = 0; trial < 30; ++trial) {
            Poly a = random_poly(*c, rng, 3);
            for (int i = 1; i <= 2; ++i) {
                int id = c->theta_id(0, i);
                CHECK(a.deriv_odd(id).deriv_odd(id).is_zero());
                CHECK(a.deriv_odd(id).deriv_even(c->lambda_id(0)) ==
                      a.deriv_even(c->lambda_id(0)).deriv_odd(id));
                int jd = c->theta_id(1, i);
                CHECK(a.deriv_odd(id).deriv_odd(jd) + a.deriv_odd(jd).deriv_odd(id) ==
                      Poly::zero(c->table()));
            }
        }
    }
}

TEST_CASE("affine substitution: variable sums")
{
    for (Flavor f : {Flavor::W, Flavor::K}) {
        auto dst = make_context(f, 1, {"1", "2"});
        auto with12 = make_context(f, 1, {"0", "1", "2"});
        AffineImage sum;
        sum.parts.push_back({1, 0});
        sum.parts.push_back({1, 1});
        CHECK(substitute_affine(*with12, with12->lambda(0), 0, sum, dst) ==
              dst->lambda(0) + dst->lambda(1));
        CHECK(substitute_affine(*with12, with12->theta(0, 1), 0, sum, dst) ==
              dst->theta(0, 1) + dst->theta(1, 1));
        if (f == Flavor::K) {
            // (theta_1 + theta_2)^2 = -(lambda_1 + lambda_2)
            Poly sq = substitute_affine(*with12, with12->theta(0, 1) * with12->theta(0, 1), 0,
                                        sum, dst);
            CHECK(sq == -(dst->lambda(0) + dst->lambda(1)));
        }
    }
}

TEST_CASE("skew substitution is an involution")
{
    std::mt19937_64 rng(23);
    for (Flavor f : {Flavor::W, Flavor::K})
        for (int N : {1, 2}) {
            auto ctx = make_context(f, N, {"1"}, true);
            AffineImage img;
            img.parts.push_back({-1, 0});
            img.parts.push_back({-1, -1});
            for (int m = 0; m <= 3; ++m)
                for (IndexSet I = 0; I <= full_set(N); ++I) {
                    Poly p = ctx->monomial(0, m, I);
                    Poly q = substitute_affine(*ctx, p, 0, img, ctx);
                    Poly back = substitute_affine(*ctx, q, 0, img, ctx);
                    CHECK(back == p);
                }
            for (int trial = 0; trial < 20; ++trial) {
                Poly p = random_poly(*ctx, rng, 3);
                Poly q = substitute_affine(*ctx, p, 0, img, ctx);
                CHECK(substitute_affine(*ctx, q, 0, img, ctx) == p);
            }
        }
}

TEST_CASE("K flavor: -Lambda-nabla satisfies the supervariable relations")
{
    auto ctx = make_context(Flavor::K, 2, {"1"}, true);
    for (int i = 1; i <= 2; ++i) {
        Poly ti = -ctx->theta(0, i) - ctx->S(i);
        Poly lam = -ctx->lambda(0) - ctx->T();
        CHECK(ti * ti == -lam);
        for (int j = 1; j <= 2; ++j) {
            if (i == j)
                continue;
            Poly tj = -ctx->theta(0, j) - ctx->S(j);
            CHECK(ti * tj + tj * ti == Poly::zero(ctx->table()));
        }
    }
}

TEST_CASE("coefficient lookup and canonical rendering")
{
    auto ctx = make_context(Flavor::W, 2, {"1"});
    Poly p = ctx->lambda(0).pow(2) * ctx->theta_set(0, 0b11) * Rat(3);
    CHECK(ctx->render(p) == "3*l1^2*t1{1,2}");
    Mono m;
    m.ev.assign(ctx->table()->n_even(), 0);
    m.ev[ctx->lambda_id(0)] = 2;
    m.odd = (1u << ctx->theta_id(0, 1)) | (1u << ctx->theta_id(0, 2));
    auto it = p.terms().find(m);
    REQUIRE(it != p.terms().end());
    CHECK(it->second == Rat(3));
    CHECK(Poly::zero(ctx->table()).terms().empty());

    auto kctx = make_context(Flavor::K, 1, {"1"});
    Poly kp = kctx->theta(0, 1) * kctx->theta(0, 1);
    Mono lm;
    lm.ev.assign(kctx->table()->n_even(), 0);
    lm.ev[0] = 1;
    CHECK(kp.terms().at(lm) == Rat(-1));
}
