#include "svao/document.hpp"

#include <fstream>
#include <sstream>

namespace svao {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& where, const std::string& what)
{
    throw DocumentError(where + ": " + what);
}

int get_int(const json& j, const std::string& key, const std::string& where)
{
    if (!j.contains(key) || !j[key].is_number_integer())
        bad(where, "missing integer field '" + key + "'");
    return j[key].get<int>();
}

std::string get_str(const json& j, const std::string& key, const std::string& where)
{
    if (!j.contains(key) || !j[key].is_string())
        bad(where, "missing string field '" + key + "'");
    return j[key].get<std::string>();
}

Rat parse_rat(const std::string& s, const std::string& where)
{
    try {
        Rat r(s);
        r.canonicalize();
        return r;
    } catch (...) {
        bad(where, "bad rational '" + s + "'");
    }
}

}  // namespace

Poly parse_nabla_poly(const std::string& s, const CtxPtr& ctx0)
{
    // grammar: poly := term (('+'|'-') term)* ; term := [rat] factor* ;
    // factor := 'T' ['^' int] | 'S' int ; factors separated by whitespace/'*'
    Poly out = Poly::zero(ctx0->table());
    size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '*' || s[pos] == '\t'))
            ++pos;
    };
    int sign = 1;
    skip_ws();
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        if (s[pos] == '-')
            sign = -1;
        ++pos;
    }
    while (pos < s.size()) {
        skip_ws();
        // coefficient
        Rat coeff(sign);
        size_t start = pos;
        while (pos < s.size() && (isdigit(s[pos]) || s[pos] == '/'))
            ++pos;
        if (pos > start)
            coeff = Rat(sign) * parse_rat(s.substr(start, pos - start), "nabla-poly");
        Poly term = Poly::constant(ctx0->table(), coeff);
        // factors
        while (true) {
            skip_ws();
            if (pos >= s.size() || s[pos] == '+' || s[pos] == '-')
                break;
            if (s[pos] == 'T') {
                ++pos;
                int e = 1;
                if (pos < s.size() && s[pos] == '^') {
                    ++pos;
                    size_t st = pos;
                    while (pos < s.size() && isdigit(s[pos]))
                        ++pos;
                    if (pos == st)
                        bad("nabla-poly", "exponent expected after T^");
                    e = std::stoi(s.substr(st, pos - st));
                }
                term = term * ctx0->T().pow(e);
            } else if (s[pos] == 'S') {
                ++pos;
                size_t st = pos;
                while (pos < s.size() && isdigit(s[pos]))
                    ++pos;
                if (pos == st)
                    bad("nabla-poly", "index expected after S");
                int i = std::stoi(s.substr(st, pos - st));
                if (i < 1 || i > ctx0->N)
                    bad("nabla-poly", "S index out of range in '" + s + "'");
                term = term * ctx0->S(i);
            } else {
                bad("nabla-poly", "unexpected character '" + std::string(1, s[pos]) + "' in '" +
                                      s + "'");
            }
        }
        out = out + term;
        skip_ws();
        if (pos >= s.size())
            break;
        if (s[pos] == '+')
            sign = 1;
        else if (s[pos] == '-')
            sign = -1;
        else
            bad("nabla-poly", "expected +/- in '" + s + "'");
        ++pos;
    }
    return out;
}

namespace {

CarrierPtr parse_carrier(const json& j, Flavor flavor, int N, const std::string& where)
{
    if (j.contains("finite_dim")) {
        const json& fd = j["finite_dim"];
        if (!fd.contains("basis") || !fd["basis"].is_array())
            bad(where + ".finite_dim", "missing basis");
        std::vector<std::string> names;
        std::vector<int> pars;
        for (auto& g : fd["basis"]) {
            names.push_back(get_str(g, "name", where + ".finite_dim.basis"));
            int p = get_int(g, "parity", where + ".finite_dim.basis");
            if (p != 0 && p != 1)
                bad(where + ".finite_dim.basis", "parity must be 0 or 1");
            pars.push_back(p);
        }
        int d = static_cast<int>(names.size());
        auto read_mat = [&](const json& m, const std::string& w) {
            if (!m.is_array() || static_cast<int>(m.size()) != d)
                bad(w, "matrix must be " + std::to_string(d) + " rows");
            Mat out(d, Vec(d, Rat(0)));
            for (int r = 0; r < d; ++r) {
                if (!m[r].is_array() || static_cast<int>(m[r].size()) != d)
                    bad(w, "row " + std::to_string(r) + " must have " + std::to_string(d) +
                               " entries");
                for (int c = 0; c < d; ++c) {
                    if (m[r][c].is_number_integer())
                        out[r][c] = Rat(m[r][c].get<long>());
                    else if (m[r][c].is_string())
                        out[r][c] = parse_rat(m[r][c].get<std::string>(), w);
                    else
                        bad(w, "entries must be integers or rational strings");
                }
            }
            return out;
        };
        std::vector<Mat> mats;
        if (!fd.contains("T"))
            bad(where + ".finite_dim", "missing T matrix");
        mats.push_back(read_mat(fd["T"], where + ".finite_dim.T"));
        if (!fd.contains("S") || !fd["S"].is_array() || static_cast<int>(fd["S"].size()) != N)
            bad(where + ".finite_dim", "S must list N matrices");
        for (int i = 0; i < N; ++i)
            mats.push_back(read_mat(fd["S"][i], where + ".finite_dim.S"));
        try {
            return make_finite_carrier(flavor, N, names, pars, mats);
        } catch (const std::exception& e) {
            bad(where + ".finite_dim", e.what());
        }
    }
    if (!j.contains("generators") || !j["generators"].is_array())
        bad(where, "missing generators");
    std::vector<std::string> names;
    std::vector<int> pars;
    for (auto& g : j["generators"]) {
        names.push_back(get_str(g, "name", where + ".generators"));
        int p = get_int(g, "parity", where + ".generators");
        if (p != 0 && p != 1)
            bad(where + ".generators", "parity must be 0 or 1");
        pars.push_back(p);
    }
    return make_free_carrier(flavor, N, names, pars);
}

MElem parse_value(const json& v, const CarrierPtr& car, const CtxPtr& ctx1, const CtxPtr& ctx0,
                  int N, const std::string& where)
{
    // list of {m, I, coeffs: {gen: nabla-poly string}}
    MElem out(ctx1, car);
    if (!v.is_array())
        bad(where, "value must be a list of monomial entries");
    for (auto& e : v) {
        int m = get_int(e, "m", where);
        if (m < 0)
            bad(where, "m must be >= 0");
        IndexSet I = 0;
        if (!e.contains("I") || !e["I"].is_array())
            bad(where, "missing index list I");
        for (auto& i : e["I"]) {
            if (!i.is_number_integer())
                bad(where, "I entries must be integers");
            int ii = i.get<int>();
            if (ii < 1 || ii > N)
                bad(where, "index " + std::to_string(ii) + " outside [N]");
            if (I & (1u << (ii - 1)))
                bad(where, "repeated index in I");
            I |= 1u << (ii - 1);
        }
        if (!e.contains("coeffs") || !e["coeffs"].is_object())
            bad(where, "missing coeffs");
        for (auto& [gname, poly] : e["coeffs"].items()) {
            int g = -1;
            try {
                g = car->index_of(gname);
            } catch (...) {
                bad(where, "unknown generator '" + gname + "'");
            }
            if (!poly.is_string())
                bad(where, "coefficient of '" + gname + "' must be a string");
            Poly h = parse_nabla_poly(poly.get<std::string>(), ctx0);
            MElem base = act_nabla(h, MElem::gen(ctx0, car, g));
            out = out + mul_poly(ctx1->monomial(0, m, I), extend_to_ctx(base, ctx1));
        }
    }
    return out.normalized();
}

MElem parse_bare(const json& coeffs, const CarrierPtr& car, const CtxPtr& ctx0,
                 const std::string& where)
{
    MElem out(ctx0, car);
    if (!coeffs.is_object())
        bad(where, "coeffs must be an object");
    for (auto& [gname, poly] : coeffs.items()) {
        int g = -1;
        try {
            g = car->index_of(gname);
        } catch (...) {
            bad(where, "unknown generator '" + gname + "'");
        }
        if (!poly.is_string())
            bad(where, "coefficient of '" + gname + "' must be a string");
        Poly h = parse_nabla_poly(poly.get<std::string>(), ctx0);
        out = out + act_nabla(h, MElem::gen(ctx0, car, g));
    }
    return out.normalized();
}

}  // namespace

AlgebraDocument parse_document(const json& j)
{
    AlgebraDocument doc;
    std::string fl = get_str(j, "flavor", "document");
    if (fl == "W")
        doc.flavor = Flavor::W;
    else if (fl == "K")
        doc.flavor = Flavor::K;
    else
        bad("document.flavor", "must be \"W\" or \"K\"");
    doc.N = get_int(j, "N", "document");
    if (doc.N < 1 || doc.N > 8)
        bad("document.N", "N must be in [1,8]");

    CarrierPtr V = parse_carrier(j, doc.flavor, doc.N, "document");
    auto ctx1 = make_context(doc.flavor, doc.N, {"1"}, true);
    auto ctx0 = make_context(doc.flavor, doc.N, {}, true);
    LCAStructure L(V, ctx1);
    if (j.contains("bracket")) {
        if (!j["bracket"].is_array())
            bad("document.bracket", "must be a list");
        for (auto& e : j["bracket"]) {
            std::string an = get_str(e, "a", "document.bracket");
            std::string bn = get_str(e, "b", "document.bracket");
            int a, b;
            try {
                a = V->index_of(an);
                b = V->index_of(bn);
            } catch (...) {
                bad("document.bracket", "unknown generator in entry (" + an + "," + bn + ")");
            }
            if (!e.contains("value"))
                bad("document.bracket", "missing value in entry (" + an + "," + bn + ")");
            L.set_entry(a, b, parse_value(e["value"], V, ctx1, ctx0, doc.N,
                                          "document.bracket(" + an + "," + bn + ")"));
        }
    }
    doc.structure = VAStructure(L);
    if (j.contains("mu")) {
        if (!j["mu"].is_array())
            bad("document.mu", "must be a list");
        doc.structure.enable_mu();
        for (auto& e : j["mu"]) {
            std::string an = get_str(e, "a", "document.mu");
            std::string bn = get_str(e, "b", "document.mu");
            int a, b;
            try {
                a = V->index_of(an);
                b = V->index_of(bn);
            } catch (...) {
                bad("document.mu", "unknown generator in entry (" + an + "," + bn + ")");
            }
            if (!e.contains("coeffs"))
                bad("document.mu", "missing coeffs in entry (" + an + "," + bn + ")");
            doc.structure.set_mu(a, b, parse_bare(e["coeffs"], V, ctx0,
                                                  "document.mu(" + an + "," + bn + ")"));
        }
    }

    if (j.contains("module")) {
        const json& mj = j["module"];
        CarrierPtr M = parse_carrier(mj, doc.flavor, doc.N, "document.module");
        VAModule W(doc.structure, M);
        if (mj.contains("lambda_action")) {
            for (auto& e : mj["lambda_action"]) {
                std::string an = get_str(e, "a", "document.module.lambda_action");
                std::string xn = get_str(e, "x", "document.module.lambda_action");
                int a, x;
                try {
                    a = V->index_of(an);
                    x = M->index_of(xn);
                } catch (...) {
                    bad("document.module.lambda_action", "unknown generator (" + an + "," + xn +
                                                             ")");
                }
                W.set_lambda_action(a, x, parse_value(e["value"], M, ctx1, ctx0, doc.N,
                                                      "document.module.lambda_action"));
            }
        }
        if (mj.contains("dot_action")) {
            for (auto& e : mj["dot_action"]) {
                std::string an = get_str(e, "a", "document.module.dot_action");
                std::string xn = get_str(e, "x", "document.module.dot_action");
                int a, x;
                try {
                    a = V->index_of(an);
                    x = M->index_of(xn);
                } catch (...) {
                    bad("document.module.dot_action", "unknown generator (" + an + "," + xn +
                                                          ")");
                }
                W.set_dot_action(a, x,
                                 parse_bare(e["coeffs"], M, ctx0, "document.module.dot_action"));
            }
        }
        doc.module = W;
        doc.has_module = true;
    }

    nlohmann::ordered_json echo;
    echo["flavor"] = fl;
    echo["N"] = doc.N;
    echo["carrier"] = V->finite ? "finite" : "free";
    echo["rank"] = V->dim();
    echo["module"] = doc.has_module;
    doc.echo = echo;
    return doc;
}

AlgebraDocument load_document(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw DocumentError("cannot read " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw DocumentError(std::string("JSON parse error: ") + e.what());
    }
    return parse_document(j);
}

Cochain2 parse_cochain2(const nlohmann::json& j, const VAModule& W)
{
    if (!j.contains("cochain2"))
        throw DocumentError("cocycle document: missing 'cochain2'");
    const json& c = j["cochain2"];
    Cochain2 Y;
    Y.parity = c.contains("parity") ? c["parity"].get<int>() : 0;
    auto ctx0 = W.ctx0m();
    auto ctxv0 = make_context(W.flavor(), W.N(), {}, true);
    (void)ctxv0;
    if (c.contains("beta"))
        for (auto& e : c["beta"]) {
            int a = W.V()->index_of(get_str(e, "a", "cochain2.beta"));
            int b = W.V()->index_of(get_str(e, "b", "cochain2.beta"));
            Y.beta[{a, b}] =
                parse_value(e["value"], W.M(), W.ctx1(), ctx0, W.N(), "cochain2.beta");
        }
    if (c.contains("em"))
        for (auto& e : c["em"]) {
            int a = W.V()->index_of(get_str(e, "a", "cochain2.em"));
            int b = W.V()->index_of(get_str(e, "b", "cochain2.em"));
            Y.em[{a, b}] = parse_bare(e["coeffs"], W.M(), ctx0, "cochain2.em");
        }
    return Y;
}

Cochain2 load_cochain2(const std::string& path, const VAModule& W)
{
    std::ifstream in(path);
    if (!in)
        throw DocumentError("cannot read " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw DocumentError(std::string("JSON parse error: ") + e.what());
    }
    return parse_cochain2(j, W);
}

}  // namespace svao
