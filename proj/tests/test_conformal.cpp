#include <doctest.h>

#include "svao/conformal.hpp"

#include <random>

using namespace svao;

namespace {

// F_1: central-extension encoding of the bc-beta-gamma system at N_W=1.
// alpha even, phi odd, C even central; [alpha_L phi] = C = [phi_L alpha].
LCAStructure make_f1()
{
    auto V = make_free_carrier(Flavor::W, 1, {"alpha", "phi", "C"}, {0, 1, 0},
                               {false, false, true});
    auto ctx1 = make_context(Flavor::W, 1, {"1"}, true);
    LCAStructure L(V, ctx1);
    L.set_entry(0, 1, MElem::gen(ctx1, V, 2));
    L.set_entry(1, 0, MElem::gen(ctx1, V, 2));
    return L;
}

// B_1: boson-fermion system at N_K=1. Psi odd, C even central;
// [Psi_L Psi] = theta C.
LCAStructure make_b1()
{
    auto V = make_free_carrier(Flavor::K, 1, {"Psi", "C"}, {1, 0}, {false, true});
    auto ctx1 = make_context(Flavor::K, 1, {"1"}, true);
    LCAStructure L(V, ctx1);
    L.set_entry(0, 0, mul_poly(ctx1->theta(0, 1), MElem::gen(ctx1, V, 1)));
    return L;
}

}  // namespace

TEST_CASE("sesquilinear extension on F1")
{
    LCAStructure L = make_f1();
    auto ctx1 = L.ctx1();
    auto ctx0 = make_context(Flavor::W, 1, {}, true);
    MElem alpha = MElem::gen(ctx0, L.V(), 0);
    MElem phi = MElem::gen(ctx0, L.V(), 1);
    MElem C = MElem::gen(ctx1, L.V(), 2);
    // [T alpha _L phi] = -lambda C
    MElem ta = act_nabla(ctx0->T(), alpha);
    CHECK(lam_bracket(L, ta, phi, ctx1, 0) == mul_poly(-ctx1->lambda(0), C));
    // [alpha _L T phi] = (lambda + T) C = lambda C (C central)
    MElem tphi = act_nabla(ctx0->T(), phi);
    CHECK(lam_bracket(L, alpha, tphi, ctx1, 0) == mul_poly(ctx1->lambda(0), C));
    // zero entries bracket to zero
    CHECK(lam_bracket(L, alpha, alpha, ctx1, 0).is_zero());
}

TEST_CASE("F1 passes all LCA axioms")
{
    LCAStructure L = make_f1();
    CheckReport rep = check_lca_axioms(L);
    for (auto& c : rep.checks)
        CHECK_MESSAGE(c.passed(), c.name, ": ", c.witness);
}

TEST_CASE("B1 passes all LCA axioms")
{
    LCAStructure L = make_b1();
    CheckReport rep = check_lca_axioms(L);
    for (auto& c : rep.checks)
        CHECK_MESSAGE(c.passed(), c.name, ": ", c.witness);
}

TEST_CASE("rank-1 odd self-bracket fails skew with defect 2a")
{
    // a odd, N=1, [a_L a] = a: skew forces a = -a
    auto V = make_free_carrier(Flavor::W, 1, {"a"}, {1});
    auto ctx1 = make_context(Flavor::W, 1, {"1"}, true);
    LCAStructure L(V, ctx1);
    L.set_entry(0, 0, MElem::gen(ctx1, V, 0));
    CHECK(L.check_parity_legal().passed());
    CheckResult skew = check_skew(L);
    CHECK_FALSE(skew.passed());
    CHECK(skew.witness.find("2*(a)") != std::string::npos);
}

TEST_CASE("lca_to_mc round trip")
{
    std::mt19937_64 rng(31);
    for (Flavor f : {Flavor::W, Flavor::K}) {
        auto V = make_free_carrier(f, 1, {"a", "b"}, {0, 1});
        auto ctx1 = make_context(f, 1, {"1"}, true);
        for (int trial = 0; trial < 50; ++trial) {
            LCAStructure L(V, ctx1);
            std::uniform_int_distribution<int> coef(-2, 2);
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    MElem val(ctx1, V);
                    for (int m = 0; m <= 1; ++m)
                        for (IndexSet I = 0; I <= 1u; ++I)
                            for (int g = 0; g < 2; ++g) {
                                // parity-legal entries only
                                if (((m == 0 ? 0 : 0) + popcount(I) + V->parity(g)) % 2 !=
                                    (V->parity(a) + V->parity(b) + 1) % 2)
                                    continue;
                                val = val + mul_poly(ctx1->monomial(0, m, I),
                                                     MElem::gen(ctx1, V, g))
                                                .scaled(Rat(coef(rng)));
                            }
                    L.set_entry(a, b, val);
                }
            ChElement X = lca_to_mc(L);
            LCAStructure back = mc_to_lca(X, ctx1);
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    CHECK(back.entry(a, b) == L.entry(a, b));
        }
    }
}

TEST_CASE("ch unit laws")
{
    LCAStructure L = make_f1();
    ChElement X = lca_to_mc(L);
    ChElement u = ch_unit(L.V(), X.shift());
    CHECK(ch_compose(X, 1, u) == X);
    CHECK(ch_compose(X, 2, u) == X);
    CHECK(ch_compose(u, 1, X) == X);
}

TEST_CASE("sym action invariance is skew-symmetry")
{
    LCAStructure L = make_f1();
    ChElement X = lca_to_mc(L);
    Perm sw{1, 0};
    CHECK(ch_sym_action(X, sw) == X);
    CHECK(ch_sym_action(ch_sym_action(X, sw), sw) == X);

    // a skew-violating table is not S_2-invariant
    auto V = make_free_carrier(Flavor::W, 1, {"a"}, {1});
    auto ctx1 = make_context(Flavor::W, 1, {"1"}, true);
    LCAStructure bad(V, ctx1);
    bad.set_entry(0, 0, MElem::gen(ctx1, V, 0));
    ChElement Xb = lca_to_mc(bad);
    CHECK_FALSE(ch_sym_action(Xb, sw) == Xb);
}

TEST_CASE("maurer-cartan agrees with the direct Jacobi checker")
{
    LCAStructure f1 = make_f1();
    CHECK(check_jacobi(f1).passed());
    CHECK(mc_check_lca(f1));

    LCAStructure b1 = make_b1();
    CHECK(check_jacobi(b1).passed());
    CHECK(mc_check_lca(b1));

    // a Jacobi-violating table that still satisfies skew: on a rank-2 free
    // module a even, e odd (N=1): [a_L a] = theta e breaks Jacobi
    {
        auto V = make_free_carrier(Flavor::W, 1, {"a", "e"}, {0, 1});
        auto ctx1 = make_context(Flavor::W, 1, {"1"}, true);
        LCAStructure L(V, ctx1);
        // [a_L a] = theta a ... parity p(a)+p(a)+1 = 1 -> value odd: theta a ok
        L.set_entry(0, 0, mul_poly(ctx1->theta(0, 1), MElem::gen(ctx1, V, 0)));
        if (check_skew(L).passed() && check_sesquilinearity(L).passed()) {
            CHECK(mc_check_lca(L) == check_jacobi(L).passed());
        }
    }

    // randomized agreement over parity-legal skew-closed tables
    std::mt19937_64 rng(47);
    int checked = 0;
    for (Flavor f : {Flavor::W, Flavor::K}) {
        auto V = make_free_carrier(f, 1, {"a", "b"}, {0, 1});
        auto ctx1 = make_context(f, 1, {"1"}, true);
        for (int trial = 0; trial < 40; ++trial) {
            LCAStructure L(V, ctx1);
            std::uniform_int_distribution<int> coef(-1, 1);
            // zero diagonals (trivially self-skew); randomize the off-diagonal
            {
                int a = 0, b = 1;
                MElem val(ctx1, V);
                for (int m = 0; m <= 1; ++m)
                    for (IndexSet I = 0; I <= 1u; ++I)
                        for (int g = 0; g < 2; ++g) {
                            if ((popcount(I) + V->parity(g)) % 2 !=
                                (V->parity(a) + V->parity(b) + 1) % 2)
                                continue;
                            val = val + mul_poly(ctx1->monomial(0, m, I),
                                                 MElem::gen(ctx1, V, g))
                                            .scaled(Rat(coef(rng)));
                        }
                L.set_entry(a, b, val);
            }
            // impose skew for the (b,a) entry
            MElem ab = L.entry(0, 1);
            MElem skewed = subst_var(
                ab, 0,
                [] {
                    AffineImage img;
                    img.parts.push_back({-1, 0});
                    img.parts.push_back({-1, -1});
                    return img;
                }(),
                ctx1);
            int sgn = -((V->parity(0) * V->parity(1) + (L.N() & 1)) % 2 ? -1 : 1);
            L.set_entry(1, 0, skewed.scaled(Rat(sgn)));
            if (!check_skew(L).passed())
                continue;  // diagonal self-skew may still fail; skip those
            ++checked;
            CHECK(mc_check_lca(L) == check_jacobi(L).passed());
        }
    }
    CHECK(checked > 20);
}
