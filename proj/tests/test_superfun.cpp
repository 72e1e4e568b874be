#include <doctest.h>

#include "svao/superfun.hpp"

using namespace svao;

TEST_CASE("flavored differences")
{
    auto w = make_fun_context(Flavor::W, 1, 3);
    CHECK(inject_difference(w, DiffKind::ZDiff, 1, 2).num() == w->z(1) - w->z(2));
    CHECK(inject_difference(w, DiffKind::ZetaDiff, 1, 2, 1).num() ==
          w->zeta(1, 1) - w->zeta(2, 1));

    auto k = make_fun_context(Flavor::K, 1, 3);
    CHECK(inject_difference(k, DiffKind::ZDiff, 1, 2).num() ==
          k->z(1) - k->z(2) - k->zeta(1, 1) * k->zeta(2, 1));
}

TEST_CASE("K inverse by the nilpotent geometric series")
{
    for (int N : {1, 2}) {
        auto k = make_fun_context(Flavor::K, N, 4);
        for (int a = 1; a <= 3; ++a)
            for (int b = a + 1; b <= 4; ++b) {
                RSF inv = inject_difference(k, DiffKind::ZDiffInv, a, b);
                RSF z = inject_difference(k, DiffKind::ZDiff, a, b);
                CHECK((inv * z).equals(RSF::one(k)));
                CHECK((z * inv).equals(RSF::one(k)));
            }
    }
    // W too
    auto w = make_fun_context(Flavor::W, 2, 2);
    RSF inv = inject_difference(w, DiffKind::ZDiffInv, 1, 2);
    RSF z = inject_difference(w, DiffKind::ZDiff, 1, 2);
    CHECK((inv * z).equals(RSF::one(w)));
}

TEST_CASE("telescoping and the K correction")
{
    auto w = make_fun_context(Flavor::W, 1, 3);
    RSF z13 = inject_difference(w, DiffKind::ZDiff, 1, 3);
    RSF z12 = inject_difference(w, DiffKind::ZDiff, 1, 2);
    RSF z23 = inject_difference(w, DiffKind::ZDiff, 2, 3);
    CHECK(z13.equals(z12 + z23));

    auto k = make_fun_context(Flavor::K, 1, 3);
    RSF kz13 = inject_difference(k, DiffKind::ZDiff, 1, 3);
    RSF kz12 = inject_difference(k, DiffKind::ZDiff, 1, 2);
    RSF kz23 = inject_difference(k, DiffKind::ZDiff, 2, 3);
    RSF diff = kz13 - kz12 - kz23;
    // -zeta1 zeta3 + zeta1 zeta2 + zeta2 zeta3
    Poly expect = -(k->zeta(1, 1) * k->zeta(3, 1)) + k->zeta(1, 1) * k->zeta(2, 1) +
                  k->zeta(2, 1) * k->zeta(3, 1);
    CHECK(diff.equals(RSF::from_poly(k, expect)));
    CHECK_FALSE(diff.is_zero());
}

TEST_CASE("derivatives on the canonical form")
{
    auto w = make_fun_context(Flavor::W, 1, 2);
    RSF zinv = inject_difference(w, DiffKind::ZDiffInv, 1, 2);
    // d_z1 z12^{-1} = -z12^{-2}
    CHECK(deriv_z(zinv, 1).equals(RSF(w, -Poly::one(w->table()), {{{1, 2}, 2}})));
    // d_{zeta_1}(zeta_{12} z12^{-1}) = z12^{-1}
    RSF zf = inject_difference(w, DiffKind::ZetaDiff, 1, 2, 1) * zinv;
    CHECK(deriv_zeta(zf, 1, 1).equals(zinv));

    auto k = make_fun_context(Flavor::K, 1, 2);
    // D_{zeta_1}(z_{1,2}) = zeta_{1,2}
    RSF kz = inject_difference(k, DiffKind::ZDiff, 1, 2);
    CHECK(deriv_D_zeta(kz, 1, 1).equals(
        RSF::from_poly(k, k->zeta(1, 1) - k->zeta(2, 1))));
    CHECK(deriv_D_zeta(kz, 2, 1).equals(
        RSF::from_poly(k, k->zeta(1, 1) - k->zeta(2, 1))));
}

TEST_CASE("translation invariance")
{
    for (Flavor f : {Flavor::W, Flavor::K}) {
        auto c = make_fun_context(f, 2, 3);
        // generators of O^{*T} pass
        CHECK(is_translation_invariant(inject_difference(c, DiffKind::ZDiff, 1, 2)));
        CHECK(is_translation_invariant(inject_difference(c, DiffKind::ZDiffInv, 1, 3)));
        CHECK(is_translation_invariant(inject_difference(c, DiffKind::ZetaDiff, 2, 3, 1)));
        // plain coordinates fail
        CHECK_FALSE(is_translation_invariant(RSF::from_poly(c, c->z(1))));
        CHECK_FALSE(is_translation_invariant(RSF::from_poly(c, c->zeta(1, 1))));
        // products of generators stay invariant
        RSF prod = inject_difference(c, DiffKind::ZetaDiff, 1, 2, 1) *
                   inject_difference(c, DiffKind::ZDiffInv, 1, 3) *
                   inject_difference(c, DiffKind::ZDiffInv, 2, 3);
        CHECK(is_translation_invariant(prod));
    }
}

TEST_CASE("equality is a congruence")
{
    auto w = make_fun_context(Flavor::W, 1, 3);
    RSF a = inject_difference(w, DiffKind::ZDiffInv, 1, 2);
    RSF b = inject_difference(w, DiffKind::ZDiffInv, 2, 3);
    RSF lhs = (a + b) * (a - b);
    RSF rhs = a * a - b * b;
    CHECK(lhs.equals(rhs));
    CHECK((lhs - rhs).is_zero());
}

TEST_CASE("apply_diffop composes generators left to right")
{
    auto w = make_fun_context(Flavor::W, 1, 2);
    RSF one = RSF::one(w);
    DiffOpWord word{{DiffOp::Tag::MulZDiff, 1, 2, 0}, {DiffOp::Tag::DZ, 1, 0, 0}};
    CHECK(apply_diffop(one, word).equals(one));
    // d_zeta after multiplication by zeta_{1,2}
    DiffOpWord word2{{DiffOp::Tag::MulZetaDiff, 1, 2, 1}, {DiffOp::Tag::DZeta, 1, 0, 1}};
    CHECK(apply_diffop(one, word2).equals(one));

    auto k = make_fun_context(Flavor::K, 1, 2);
    // K: D_zeta^2 = d_z on z_{1,2} (superconformal square)
    RSF kz = inject_difference(k, DiffKind::ZDiff, 1, 2);
    RSF dd = deriv_D_zeta(deriv_D_zeta(kz, 1, 1), 1, 1);
    CHECK(dd.equals(deriv_z(kz, 1)));
}
