#include <doctest.h>

#include "svao/hmodule.hpp"

#include <random>

using namespace svao;

namespace {

CarrierPtr free2(Flavor f, int N)
{
    return make_free_carrier(f, N, {"a", "b"}, {0, 1});
}

MElem random_elem(const CtxPtr& ctx, const CarrierPtr& car, std::mt19937_64& rng, int max_deg,
                  bool with_words = true)
{
    std::uniform_int_distribution<int> coef(-2, 2);
    MElem x(ctx, car);
    for (int t = 0; t < 4; ++t) {
        Mono m;
        m.ev.assign(ctx->table()->n_even(), 0);
        for (int v = 0; v < ctx->n_vars(); ++v)
            m.ev[ctx->lambda_id(v)] = static_cast<int>(rng() % (max_deg + 1));
        for (int v = 0; v < ctx->n_vars(); ++v)
            for (int i = 1; i <= ctx->N; ++i)
                if (rng() & 1)
                    m.odd |= 1u << ctx->theta_id(v, i);
        if (with_words && ctx->has_nabla) {
            m.ev[ctx->T_id()] = static_cast<int>(rng() % 2);
            for (int i = 1; i <= ctx->N; ++i)
                if (rng() % 3 == 0)
                    m.odd |= 1u << ctx->S_id(i);
        }
        x.add_term(m, static_cast<int>(rng() % car->dim()), Rat(coef(rng)));
    }
    return x;
}

}  // namespace

TEST_CASE("act sign rules of the module structure")
{
    for (Flavor f : {Flavor::W, Flavor::K}) {
        int N = 2;
        auto car = free2(f, N);
        auto ctx = make_context(f, N, {"1"}, true);
        MElem a = MElem::gen(ctx, car, 0);
        // S^i Lambda^{m|I} v = (-1)^{#I} Lambda^{m|I} S^i v  (W; K adds the
        // Clifford cross terms)
        MElem x = mul_poly(ctx->monomial(0, 1, 0b01), a);  // lambda theta^1 a
        MElem acted = act_nabla(ctx->S(2), x);
        MElem expect = mul_poly(ctx->monomial(0, 1, 0b01), act_nabla(ctx->S(2), a)).scaled(
            Rat(-1));
        CHECK(acted == expect);
        // T passes with no sign
        CHECK(act_nabla(ctx->T(), x) == mul_poly(ctx->monomial(0, 1, 0b01),
                                                 act_nabla(ctx->T(), a)));
        if (f == Flavor::K) {
            // S^1 (theta^1 a) = -theta^1 S^1 a + 2 lambda a
            MElem y = mul_poly(ctx->theta(0, 1), a);
            MElem lhs = act_nabla(ctx->S(1), y);
            MElem rhs = mul_poly(ctx->theta(0, 1), act_nabla(ctx->S(1), a)).scaled(Rat(-1)) +
                        mul_poly(ctx->lambda(0) * Rat(2), a);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("act respects the H relations")
{
    std::mt19937_64 rng(5);
    for (Flavor f : {Flavor::W, Flavor::K}) {
        int N = 2;
        auto car = free2(f, N);
        auto ctx = make_context(f, N, {"1"}, true);
        for (int trial = 0; trial < 30; ++trial) {
            MElem x = random_elem(ctx, car, rng, 2);
            for (int i = 1; i <= N; ++i) {
                CHECK(act_nabla(ctx->T(), act_nabla(ctx->S(i), x)) ==
                      act_nabla(ctx->S(i), act_nabla(ctx->T(), x)));
                for (int j = 1; j <= N; ++j) {
                    MElem anti = act_nabla(ctx->S(i), act_nabla(ctx->S(j), x)) +
                                 act_nabla(ctx->S(j), act_nabla(ctx->S(i), x));
                    MElem expect = (f == Flavor::K && i == j)
                                       ? act_nabla(ctx->T(), x).scaled(Rat(2))
                                       : MElem(ctx, car);
                    CHECK(anti == expect);
                }
            }
        }
    }
}

TEST_CASE("reduce_nabla examples and involution")
{
    for (Flavor f : {Flavor::W, Flavor::K}) {
        int N = 1;
        auto car = free2(f, N);
        auto ctx2 = make_context(f, N, {"1", "2"}, true);
        MElem v = MElem::gen(ctx2, car, 0);
        // n=2: lambda_2 v -> (-lambda_1 - T) v
        MElem x = mul_poly(ctx2->lambda(1), v);
        MElem red = reduce_nabla(x, 1);
        auto ctx1 = red.ctx();
        MElem expect = mul_poly(-ctx1->lambda(0), MElem::gen(ctx1, car, 0)) -
                       act_nabla(ctx1->T(), MElem::gen(ctx1, car, 0));
        CHECK(red == expect);
        // theta_2 v -> -theta_1 v - S v
        MElem y = reduce_nabla(mul_poly(ctx2->theta(1, 1), v), 1);
        MElem expect2 = mul_poly(-ctx1->theta(0, 1), MElem::gen(ctx1, car, 0)) -
                        act_nabla(ctx1->S(1), MElem::gen(ctx1, car, 0));
        CHECK(y == expect2);
    }

    // unreduce then reduce is the identity
    std::mt19937_64 rng(17);
    for (Flavor f : {Flavor::W, Flavor::K})
        for (int N : {1, 2}) {
            auto car = free2(f, N);
            auto ctx1 = make_context(f, N, {"1"}, true);
            auto ctx2 = make_context(f, N, {"1", "2"}, true);
            for (int trial = 0; trial < 25; ++trial) {
                MElem x = random_elem(ctx1, car, rng, 3);
                MElem up = unreduce_nabla(x, ctx2);
                MElem down = reduce_nabla(up, 1);
                CHECK(extend_to_ctx(down, ctx1) == x);
            }
        }
}

TEST_CASE("definite integral of the distinguished variable")
{
    for (Flavor f : {Flavor::W, Flavor::K})
        for (int N : {1, 2}) {
            auto car = free2(f, N);
            auto ctx = make_context(f, N, {"1"}, true);
            MElem v = MElem::gen(ctx, car, 0);
            IndexSet full = full_set(N);
            // int_F^G dL L^{m|[N]} v = (G^{m+1}-F^{m+1}) v/(m+1)
            for (int m = 0; m <= 3; ++m) {
                MElem x = mul_poly(ctx->monomial(0, m, full), v);
                Poly F = -ctx->T(), G = Poly::zero(ctx->table());
                MElem got = definite_integral(x, 0, F, G);
                MElem expect =
                    act_nabla((G.pow(m + 1) - F.pow(m + 1)) * rat(1, m + 1), v);
                CHECK(got == expect);
            }
            // I != [N] integrates to zero
            if (N == 2) {
                MElem x = mul_poly(ctx->monomial(0, 1, 0b01), v);
                CHECK(definite_integral(x, 0, Poly::zero(ctx->table()), ctx->T()).is_zero());
            }
            // int_{-T}^0 dL theta^{[N]} v = T v
            MElem x = mul_poly(ctx->theta_set(0, full), v);
            CHECK(definite_integral(x, 0, -ctx->T(), Poly::zero(ctx->table())) ==
                  act_nabla(ctx->T(), v));
        }
}

TEST_CASE("stacked bounds are additive")
{
    std::mt19937_64 rng(29);
    for (Flavor f : {Flavor::W, Flavor::K}) {
        int N = 1;
        auto car = free2(f, N);
        auto ctx = make_context(f, N, {"1", "2"}, true);
        Poly F = Poly::zero(ctx->table());
        Poly G = ctx->T();
        Poly H = ctx->lambda(1) + ctx->T();
        for (int trial = 0; trial < 20; ++trial) {
            MElem x = random_elem(ctx, car, rng, 3);
            MElem a = definite_integral(x, 0, F, G) + definite_integral(x, 0, G, H);
            CHECK(a == definite_integral(x, 0, F, H));
        }
    }
}

TEST_CASE("residue extracts the (0,[N]) coefficient")
{
    for (int N : {1, 2}) {
        auto car = free2(Flavor::W, N);
        auto ctx = make_context(Flavor::W, N, {"1"}, true);
        MElem a = MElem::gen(ctx, car, 0);
        CHECK(residue(mul_poly(ctx->theta_set(0, full_set(N)), a), 0) == a);
        CHECK(residue(mul_poly(ctx->monomial(0, 1, full_set(N)), a), 0).is_zero());
        if (N == 2)
            CHECK(residue(mul_poly(ctx->theta_set(0, 0b01), a), 0).is_zero());
        // Res(lambda x) = 0 always
        std::mt19937_64 rng(3);
        MElem x = random_elem(ctx, car, rng, 2);
        CHECK(residue(mul_poly(ctx->lambda(0), x), 0).is_zero());
        // d_lambda o int_0^lambda = id
        MElem ad = antideriv_lambda(x, 0);
        CHECK(deriv_lambda(ad, 0) == x);
    }
}

TEST_CASE("exponential shift identity")
{
    // e^{nabla d_Lambda} o (L -> -L) == (L -> -L-nabla) on V[Lambda]
    std::mt19937_64 rng(41);
    for (Flavor f : {Flavor::W, Flavor::K})
        for (int N : {1, 2}) {
            auto car = free2(f, N);
            auto ctx = make_context(f, N, {"1"}, true);
            AffineImage neg;
            neg.parts.push_back({-1, 0});
            AffineImage negnab;
            negnab.parts.push_back({-1, 0});
            negnab.parts.push_back({-1, -1});
            for (int trial = 0; trial < 25; ++trial) {
                MElem x = random_elem(ctx, car, rng, 3, false);
                MElem lhs = exp_nabla_partial(subst_var(x, 0, neg, ctx), 0);
                MElem rhs = subst_var(x, 0, negnab, ctx);
                CHECK(lhs == rhs);
            }
        }
}

TEST_CASE("mod nabla projection on a free module")
{
    auto car = free2(Flavor::W, 1);
    auto ctx0 = make_context(Flavor::W, 1, {}, true);
    MElem g = MElem::gen(ctx0, car, 0);
    MElem h = MElem::gen(ctx0, car, 1);
    CHECK(mod_nabla_project(act_nabla(ctx0->T(), g)).is_zero());
    MElem mix = g + act_nabla(ctx0->S(1), h);
    CHECK(mod_nabla_project(mix) == g);
}

TEST_CASE("finite carrier normalization applies the matrices")
{
    // K[x]/(x^2) tensor Grassmann(xi), W flavor: T = d_x, S = xi d_x
    // basis: 1, x, xi, x xi
    Mat T = {{Rat(0), Rat(1), Rat(0), Rat(0)},
             {Rat(0), Rat(0), Rat(0), Rat(0)},
             {Rat(0), Rat(0), Rat(0), Rat(1)},
             {Rat(0), Rat(0), Rat(0), Rat(0)}};
    Mat S = {{Rat(0), Rat(0), Rat(0), Rat(0)},
             {Rat(0), Rat(0), Rat(0), Rat(0)},
             {Rat(0), Rat(1), Rat(0), Rat(0)},
             {Rat(0), Rat(0), Rat(0), Rat(0)}};
    auto car = make_finite_carrier(Flavor::W, 1, {"1", "x", "xi", "xxi"}, {0, 0, 1, 1},
                                   {T, S});
    auto ctx = make_context(Flavor::W, 1, {"1"}, true);
    MElem x = MElem::gen(ctx, car, 1);
    MElem tx = act_nabla(ctx->T(), x);
    CHECK(tx == MElem::gen(ctx, car, 0));
    MElem sx = act_nabla(ctx->S(1), x);
    CHECK(sx == MElem::gen(ctx, car, 2));
    CHECK(act_nabla(ctx->S(1), sx).is_zero());
}
