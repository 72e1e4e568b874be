#include <doctest.h>

#include "family.hpp"
#include "svao/vertex.hpp"

using namespace svao;
using namespace svao::testfam;

TEST_CASE("integral bracket satisfies its three characterizing conditions")
{
    for (auto& S : holomorphic_family()) {
        const auto& V = *S.V();
        auto ctx1 = S.lca().ctx1();
        for (int a = 0; a < V.dim(); ++a)
            for (int b = 0; b < V.dim(); ++b) {
                MElem ea = S.gen_elem(a), eb = S.gen_elem(b);
                MElem F = integral_bracket(S, ea, eb, ctx1, 0);
                // d_lambda F = [a_L b]
                CHECK(deriv_lambda(F, 0) == lam_bracket(S.lca(), ea, eb, ctx1, 0));
                // Res(lambda^{-1} F) = ab
                CHECK(residue(F, 0) == extend_to_ctx(S.mu_elems(ea, eb), ctx1));
                // S-residue condition
                for (int i = 1; i <= V.N; ++i) {
                    MElem lhs = residue(
                        integral_bracket(S, act_nabla(ea.ctx()->S(i), ea), eb, ctx1, 0), 0);
                    MElem rhs = residue(mul_poly(ctx1->theta(0, i), F), 0)
                                    .scaled(Rat((V.N + 1) % 2 ? -1 : 1));
                    CHECK(lhs == rhs);
                }
            }
    }
}

TEST_CASE("integral bracket uniqueness: perturbation breaks a condition")
{
    VAStructure S = holo22(Flavor::W);
    auto ctx1 = S.lca().ctx1();
    MElem a = S.gen_elem(1), b = S.gen_elem(2);
    MElem F = integral_bracket(S, a, b, ctx1, 0);
    // add a lambda-free term: the residue or the S-residue condition fails
    MElem G = F + mul_poly(ctx1->theta(0, 1), extend_to_ctx(S.gen_elem(0), ctx1));
    bool res_ok = residue(G, 0) == extend_to_ctx(S.mu_elems(a, b), ctx1);
    bool dl_ok = deriv_lambda(G, 0) == lam_bracket(S.lca(), a, b, ctx1, 0);
    bool both = res_ok && dl_ok;
    CHECK_FALSE(both);
}

TEST_CASE("holomorphic finite structures pass every axiom")
{
    for (auto& S : holomorphic_family()) {
        CheckReport rep = check_va_axioms(S);
        for (auto& c : rep.checks)
            CHECK_MESSAGE(c.passed(), c.name, ": ", c.witness);
        CHECK(check_right_wick(S).passed());
        CHECK(check_lsym(S).passed());
        CHECK(check_skecom_integral_form(S).passed());
        CHECK(check_jqas_integral_form(S).passed());
        McCertificate cert = mc_check_va_certificate(S);
        CHECK_MESSAGE(cert.value(), cert.failing_line);
        CHECK(cert.n_max >= 2);
    }
}

TEST_CASE("mu mutants are caught and the checkers agree")
{
    VAStructure base = holo22(Flavor::W);
    // xi . xi = 1 breaks quasi-commutativity (odd square)
    VAStructure m1 = mutate_mu(base, 2, 2, 0, Rat(1));
    CHECK_FALSE(check_quasi_commutativity(m1).passed());
    CHECK_FALSE(check_va_axioms(m1).all_passed());
    CHECK_FALSE(mc_check_va(m1));
    // 1 . 1 = 1 + x breaks the derivation rule
    VAStructure m2 = mutate_mu(base, 0, 0, 1, Rat(1));
    CHECK_FALSE(check_derivations(m2).passed());
    CHECK_FALSE(mc_check_va(m2));
    CHECK(mc_check_va_certificate(m2).failing_line.find("precondition") == 0);
    // agreement on a spread of single-entry mu mutants
    int caught = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int out = 0; out < 4; ++out) {
                if (((base.V()->parity(a) + base.V()->parity(b)) & 1) !=
                    base.V()->parity(out))
                    continue;  // keep mu even so the defect is structural
                VAStructure m = mutate_mu(base, a, b, out, Rat(1));
                bool direct = check_va_axioms(m).all_passed();
                bool mc = mc_check_va(m);
                CHECK(direct == mc);
                if (!direct)
                    ++caught;
            }
    CHECK(caught > 5);
}

TEST_CASE("bracket mutants break sesquilinearity or the certificate, consistently")
{
    VAStructure base = holo22(Flavor::W);
    auto ctx1 = base.lca().ctx1();
    // [x_L xi] = 1: parity-legal but not sesquilinear against T
    VAStructure m = mutate_bracket(base, 1, 2, MElem::gen(ctx1, base.V(), 0));
    CHECK_FALSE(check_sesquilinearity(m.lca()).passed());
    CHECK_FALSE(mc_check_va(m));
    CHECK_FALSE(check_va_axioms(m).all_passed());
}

TEST_CASE("right Wick and lsym equivalences hold on lemma-hypothesis mutants")
{
    // perturbations that keep (i) and (ii): deform mu on strict top-degree
    // pairs, then Wick <-> right-Wick and qass <-> lsym must agree
    VAStructure base = holo22(Flavor::W);
    std::vector<VAStructure> family{base, holo22(Flavor::K), holo11(Flavor::W), holo30()};
    // xxi . xi and xi . xxi deformations keep T/S-derivations on holo22(W)?
    // verified dynamically: only instances passing the hypotheses count.
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int out = 0; out < 4; ++out) {
                VAStructure m = mutate_mu(base, a, b, out, Rat(1));
                if (!check_mu_even(m).passed() || !check_derivations(m).passed())
                    continue;
                if (!check_skew(m.lca()).passed() ||
                    !check_quasi_commutativity(m).passed())
                    continue;
                family.push_back(m);
            }
    CHECK(family.size() > 4);
    for (auto& S : family) {
        CHECK(check_wick(S).passed() == check_right_wick(S).passed());
        CHECK(check_quasi_associativity(S).passed() == check_lsym(S).passed());
        CHECK(check_skecom_integral_form(S).passed());
        bool direct3 = check_jacobi(S.lca()).passed() &&
                       check_quasi_associativity(S).passed() && check_wick(S).passed();
        CHECK(direct3 == check_jqas_integral_form(S).passed());
    }
}

TEST_CASE("pch2 round trip and equivariance")
{
    for (auto& S : holomorphic_family()) {
        Pch2Element X = pch2_from_structure(S, 4);
        VAStructure back = mc_to_va(X, S.lca().ctx1());
        const auto& V = *S.V();
        for (int a = 0; a < V.dim(); ++a)
            for (int b = 0; b < V.dim(); ++b) {
                CHECK(back.lca().entry(a, b) == S.lca().entry(a, b));
                const MElem* m1 = back.mu_entry(a, b);
                const MElem* m2 = S.mu_entry(a, b);
                MElem z(S.ctx0(), S.V());
                CHECK((m1 ? *m1 : z) == (m2 ? *m2 : z));
            }
        CheckResult eq = check_pch2_equivariance(X);
        CHECK_MESSAGE(eq.passed(), eq.witness);
    }
}

TEST_CASE("pch2 values: beta, em and the T-shifted second pole")
{
    VAStructure S = holo22(Flavor::W);
    Pch2Element X = pch2_from_structure(S, 4);
    auto ctx1 = X.ctx1();
    const auto& V = *S.V();
    int nb = S.nbar();
    for (int a = 0; a < V.dim(); ++a)
        for (int b = 0; b < V.dim(); ++b) {
            int sgn = (V.parity(a) * ((nb + 1) & 1)) % 2 ? -1 : 1;
            CHECK(evaluate_pch2(X, a, b, 0, 0) ==
                  lam_bracket(S.lca(), S.gen_elem(a), S.gen_elem(b), ctx1, 0)
                      .scaled(Rat(sgn)));
            CHECK(evaluate_pch2(X, a, b, 1, 0) ==
                  integral_bracket(S, S.gen_elem(a), S.gen_elem(b), ctx1, 0)
                      .scaled(Rat(-sgn)));
        }
    // z^{-2} value equals the d_z1-relation ladder by construction; check the
    // stated identity against a direct computation on one pair
    int a = 1, b = 1;  // x, x
    MElem v2 = evaluate_pch2(X, a, b, 2, 0);
    Vec e(V.dim(), Rat(0));
    e[a] = 1;
    Vec Te = V.apply_T(e);
    MElem tpart(ctx1, X.V());
    for (int k = 0; k < V.dim(); ++k)
        if (!is_zero(Te[k]))
            tpart.add_scaled(evaluate_pch2(X, k, b, 1, 0), Te[k]);
    CHECK(v2 == (mul_poly(-ctx1->lambda(0), evaluate_pch2(X, a, b, 1, 0)) - tpart));
}

TEST_CASE("vacuum utility")
{
    VAStructure S = holo22(Flavor::W);
    CHECK(check_vacuum(S, 0).passed());
    CHECK_FALSE(check_vacuum(S, 1).passed());
}
