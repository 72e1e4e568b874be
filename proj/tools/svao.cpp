// svao: batch checker for SUSY Lambda-bracket structures.
//
// svao <command> --input <file> [--output json|text] [--degree-bound d]
//   check --axioms lca|va|integral-forms|module
//   mc --level lca|va
//   cohomology --h 0|1 [--degree-bound d]
//   extend --cocycle <path> [--verify]
//   bracket --eval a b

#include "svao/document.hpp"
#include "svao/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

using namespace svao;

namespace {

int finish(const Report& rep, const std::string& output)
{
    if (output == "json")
        std::cout << rep.to_json().dump(2) << "\n";
    else
        std::cout << rep.to_text();
    return rep.all_passed() && !rep.any_not_evaluable() ? 0 : 1;
}

uint64_t seed_from_env()
{
    const char* s = std::getenv("SVAO_SEED");
    if (!s)
        return 0x5eed5a0ULL;
    return std::strtoull(s, nullptr, 10);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact checker for SUSY Lambda-bracket structures"};
    app.require_subcommand(1);

    std::string input, output = "text", axioms = "lca", level = "lca";
    std::string cocycle_path, eval_a, eval_b, flavor_override;
    int hdeg = 0, degree_bound = 2;
    bool do_verify = false;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--input", input, "algebra document (JSON)")->required();
        c->add_option("--output", output, "json|text")
            ->check(CLI::IsMember({"json", "text"}));
        c->add_option("--degree-bound", degree_bound, "truncation degree for free carriers");
        c->add_option("--flavor-override", flavor_override, "force flavor W|K")
            ->check(CLI::IsMember({"W", "K"}));
    };

    auto* c_check = app.add_subcommand("check", "run axiom checkers");
    add_common(c_check);
    c_check->add_option("--axioms", axioms, "lca|va|integral-forms|module")
        ->check(CLI::IsMember({"lca", "va", "integral-forms", "module"}));

    auto* c_mc = app.add_subcommand("mc", "Maurer-Cartan check");
    add_common(c_mc);
    c_mc->add_option("--level", level, "lca|va")->check(CLI::IsMember({"lca", "va"}));

    auto* c_coh = app.add_subcommand("cohomology", "low-degree cohomology");
    add_common(c_coh);
    c_coh->add_option("--h", hdeg, "degree (0 or 1)")->check(CLI::IsMember({0, 1}));

    auto* c_ext = app.add_subcommand("extend", "build an extension from a 2-cochain");
    add_common(c_ext);
    c_ext->add_option("--cocycle", cocycle_path, "cochain document (JSON)")->required();
    c_ext->add_flag("--verify", do_verify, "run the axiom checkers on the extension");

    auto* c_br = app.add_subcommand("bracket", "evaluate one bracket entry");
    add_common(c_br);
    c_br->add_option("--eval", eval_a, "first generator")->required();
    c_br->add_option("b", eval_b, "second generator")->required();

    CLI11_PARSE(app, argc, argv);
    (void)seed_from_env();

    try {
        AlgebraDocument doc = load_document(input);
        if (!flavor_override.empty()) {
            Flavor want = flavor_override == "W" ? Flavor::W : Flavor::K;
            if (doc.flavor != want)
                throw DocumentError("flavor-override conflicts with document flavor");
        }
        Report rep;
        rep.input_echo = doc.echo;
        rep.options["degree_bound"] = degree_bound;

        if (app.got_subcommand(c_check)) {
            rep.command = "check --axioms " + axioms;
            if (axioms == "lca") {
                rep.add_all(check_lca_axioms(doc.structure.lca()));
            } else if (axioms == "va") {
                rep.add_all(check_va_axioms(doc.structure));
                rep.add(check_right_wick(doc.structure));
                rep.add(check_lsym(doc.structure));
            } else if (axioms == "integral-forms") {
                rep.add_all(check_integral_forms(doc.structure));
            } else {
                if (!doc.has_module)
                    throw DocumentError("document has no module block");
                rep.add_all(check_module_axioms(doc.module, doc.structure.has_mu()));
            }
            return finish(rep, output);
        }
        if (app.got_subcommand(c_mc)) {
            rep.command = "mc --level " + level;
            if (level == "lca") {
                CheckReport pre = check_lca_axioms(doc.structure.lca());
                rep.add(*pre.find("parity-legal"));
                rep.add(*pre.find("sesquilinearity"));
                rep.add(*pre.find("skew-symmetry"));
                bool mc = false;
                if (pre.find("skew-symmetry")->passed() && pre.find("parity-legal")->passed())
                    mc = mc_check_lca(doc.structure.lca());
                CheckResult r{"maurer-cartan", mc ? CheckStatus::Pass : CheckStatus::Fail, ""};
                if (!mc)
                    r.witness = "X box X != 0";
                rep.add(r);
                rep.data["agrees_with_jacobi"] =
                    mc == check_jacobi(doc.structure.lca()).passed();
            } else {
                McCertificate cert = mc_check_va_certificate(doc.structure);
                CheckResult r{"maurer-cartan", cert.value() ? CheckStatus::Pass
                                                            : CheckStatus::Fail,
                              cert.failing_line};
                rep.add(r);
                rep.data["n_max"] = cert.n_max;
                rep.data["agrees_with_axioms"] =
                    cert.value() == check_va_axioms(doc.structure).all_passed();
            }
            return finish(rep, output);
        }
        if (app.got_subcommand(c_coh)) {
            rep.command = "cohomology --h " + std::to_string(hdeg);
            if (!doc.has_module)
                throw DocumentError("document has no module block");
            if (hdeg == 0) {
                H0Result res = h0(doc.module);
                rep.data["h0_dim"] = res.dim_casimir_route;
                rep.data["kernel_route_dim"] = res.dim_kernel_route;
                rep.add({"h0-two-way-agreement",
                         res.agree ? CheckStatus::Pass : CheckStatus::Fail, ""});
            } else {
                H1Result res = h1(doc.module, degree_bound);
                rep.data["h1_dim"] = res.dim_h1;
                rep.data["der_dim"] = res.dim_der;
                rep.data["ind_dim"] = res.dim_ind;
                rep.data["truncated_at_degree"] = res.deg_bound;
                rep.add({"ker-d1-equals-der",
                         res.ker_d1_equals_der ? CheckStatus::Pass : CheckStatus::Fail, ""});
                rep.add({"im-d0-equals-ind",
                         res.im_d0_equals_ind ? CheckStatus::Pass : CheckStatus::Fail, ""});
            }
            return finish(rep, output);
        }
        if (app.got_subcommand(c_ext)) {
            rep.command = "extend";
            if (!doc.has_module)
                throw DocumentError("document has no module block");
            Cochain2 Y = load_cochain2(cocycle_path, doc.module);
            rep.add(cochain2_invariance(doc.module, Y));
            VAStructure E = build_extension(doc.module, Y);
            rep.data["extension_rank"] = E.V()->dim();
            if (do_verify) {
                CheckReport v = verify_extension(E);
                rep.add_all(v);
                rep.data["mc_check"] = mc_check_va(E);
            }
            return finish(rep, output);
        }
        if (app.got_subcommand(c_br)) {
            rep.command = "bracket --eval";
            const auto& V = *doc.structure.V();
            int a = V.index_of(eval_a), b = V.index_of(eval_b);
            MElem v = doc.structure.lca().entry(a, b);
            rep.data["bracket"] = v.str();
            MElem skew = bracket_skew_side(doc.structure.lca(), doc.structure.gen_elem(a),
                                           doc.structure.gen_elem(b),
                                           doc.structure.lca().ctx1(), 0);
            rep.data["skew_side"] = skew.str();
            return finish(rep, output);
        }
        return 2;
    } catch (const DocumentError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const NotEvaluable& e) {
        std::cerr << "not evaluable: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
