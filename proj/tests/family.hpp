#pragma once

// Shared test instances: holomorphic finite carriers, the F1/B1 free
// structures, and single-entry mutation helpers.

#include "svao/cohomology.hpp"

#include <random>

namespace svao::testfam {

// Grassmann(xi, eta), basis {1, w = xi eta, xi, eta}, dims (2|2).
// T = xi d_eta (even, nilpotent), S = d_eta (W) resp. the same with S^2 = 0 =
// handled by T = 0 in the K variant (no finite K-carrier on two odd
// generators has S^2 = T nonzero).
inline VAStructure holo22(Flavor f)
{
    int d = 4;
    Mat T(d, Vec(d, Rat(0))), S(d, Vec(d, Rat(0)));
    if (f == Flavor::W) {
        T[2][3] = 1;   // T eta = xi
        S[0][3] = 1;   // S eta = 1
        S[2][1] = -1;  // S w = S(xi eta) = -xi
    } else {
        S[0][3] = 1;   // S eta = 1, S^2 = 0 = T
        S[2][1] = -1;
    }
    auto V = make_finite_carrier(f, 1, {"1", "w", "xi", "eta"}, {0, 0, 1, 1}, {T, S});
    auto ctx1 = make_context(f, 1, {"1"}, true);
    VAStructure va{LCAStructure(V, ctx1)};
    va.enable_mu();
    auto set = [&](int a, int b, int out, int coeff = 1) {
        va.set_mu(a, b, MElem::gen(va.ctx0(), V, out, Rat(coeff)));
    };
    for (int a = 0; a < d; ++a) {
        set(0, a, a);
        if (a != 0)
            set(a, 0, a);
    }
    set(2, 3, 1);      // xi . eta = w
    set(3, 2, 1, -1);  // eta . xi = -w
    return va;
}

// Grassmann(xi), dims (1|1), trivial nabla; holomorphic in both flavors.
inline VAStructure holo11(Flavor f)
{
    Mat T(2, Vec(2, Rat(0))), S(2, Vec(2, Rat(0)));
    auto V = make_finite_carrier(f, 1, {"1", "xi"}, {0, 1}, {T, S});
    auto ctx1 = make_context(f, 1, {"1"}, true);
    VAStructure va{LCAStructure(V, ctx1)};
    va.enable_mu();
    va.set_mu(0, 0, MElem::gen(va.ctx0(), V, 0));
    va.set_mu(0, 1, MElem::gen(va.ctx0(), V, 1));
    va.set_mu(1, 0, MElem::gen(va.ctx0(), V, 1));
    return va;
}

// K[x,y]/(x^2, xy, y^2), dims (3|0), W flavor: T y = x, nilpotent derivation.
inline VAStructure holo30()
{
    int d = 3;
    Mat T(d, Vec(d, Rat(0))), S(d, Vec(d, Rat(0)));
    T[1][2] = 1;  // T y = x
    auto V = make_finite_carrier(Flavor::W, 1, {"1", "x", "y"}, {0, 0, 0}, {T, S});
    auto ctx1 = make_context(Flavor::W, 1, {"1"}, true);
    VAStructure va{LCAStructure(V, ctx1)};
    va.enable_mu();
    auto set = [&](int a, int b, int out) {
        va.set_mu(a, b, MElem::gen(va.ctx0(), V, out));
    };
    for (int a = 0; a < d; ++a) {
        set(0, a, a);
        if (a != 0)
            set(a, 0, a);
    }
    return va;
}

inline std::vector<VAStructure> holomorphic_family()
{
    return {holo11(Flavor::W), holo11(Flavor::K), holo22(Flavor::W), holo22(Flavor::K),
            holo30()};
}

// F_1 as a full (bracket-only) structure for LCA level tests.
inline LCAStructure f1()
{
    auto V = make_free_carrier(Flavor::W, 1, {"alpha", "phi", "C"}, {0, 1, 0},
                               {false, false, true});
    auto ctx1 = make_context(Flavor::W, 1, {"1"}, true);
    LCAStructure L(V, ctx1);
    L.set_entry(0, 1, MElem::gen(ctx1, V, 2));
    L.set_entry(1, 0, MElem::gen(ctx1, V, 2));
    return L;
}

inline LCAStructure b1()
{
    auto V = make_free_carrier(Flavor::K, 1, {"Psi", "C"}, {1, 0}, {false, true});
    auto ctx1 = make_context(Flavor::K, 1, {"1"}, true);
    LCAStructure L(V, ctx1);
    L.set_entry(0, 0, mul_poly(ctx1->theta(0, 1), MElem::gen(ctx1, V, 1)));
    return L;
}

// single-entry mutations of finite structures
inline VAStructure mutate_mu(const VAStructure& S, int a, int b, int out, const Rat& c)
{
    VAStructure r = S;
    const MElem* cur = S.mu_entry(a, b);
    MElem v = cur ? *cur : MElem(S.ctx0(), S.V());
    v.add_term(
        [&] {
            Mono m;
            m.ev.assign(S.ctx0()->table()->n_even(), 0);
            return m;
        }(),
        out, c);
    r.set_mu(a, b, v);
    return r;
}

inline VAStructure mutate_bracket(const VAStructure& S, int a, int b, const MElem& delta)
{
    VAStructure r = S;
    MElem v = S.lca().entry(a, b) + delta;
    r.lca().set_entry(a, b, v);
    return r;
}

// trivial (zero-action) finite module of dims (d0|d1) over a structure
inline VAModule trivial_module(const VAStructure& S, int d0, int d1)
{
    int d = d0 + d1;
    std::vector<std::string> names;
    std::vector<int> pars;
    for (int i = 0; i < d; ++i) {
        names.push_back("m" + std::to_string(i));
        pars.push_back(i < d0 ? 0 : 1);
    }
    Mat Z(d, Vec(d, Rat(0)));
    std::vector<Mat> mats(1 + S.N(), Z);
    auto M = make_finite_carrier(S.flavor(), S.N(), names, pars, mats);
    return VAModule(S, M);
}

}  // namespace svao::testfam
