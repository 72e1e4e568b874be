#pragma once

#include "svao/cohomology.hpp"

#include <json.hpp>
#include <optional>

namespace svao {

// Schema violation with the offending field path; the CLI maps it to the
// input-error exit class.
struct DocumentError : std::runtime_error {
    explicit DocumentError(const std::string& what) : std::runtime_error(what) {}
};

// Parsed algebra description: a structure candidate plus an optional module.
struct AlgebraDocument {
    Flavor flavor = Flavor::W;
    int N = 1;
    VAStructure structure;
    bool has_module = false;
    VAModule module;
    nlohmann::ordered_json echo;  // canonical echo for reports
};

// nabla-polynomial strings: sums of terms `c T^k S1 S2 ...` with rational c
Poly parse_nabla_poly(const std::string& s, const CtxPtr& ctx0);

AlgebraDocument parse_document(const nlohmann::json& j);
AlgebraDocument load_document(const std::string& path);

// degree-2 cochain document attached to a base document's module
Cochain2 parse_cochain2(const nlohmann::json& j, const VAModule& W);
Cochain2 load_cochain2(const std::string& path, const VAModule& W);

}  // namespace svao
