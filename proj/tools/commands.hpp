#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace secantkit::cli {

using Json = nlohmann::ordered_json;

struct RunReport {
    std::string command;
    Json parameters = Json::object();
    Json results = Json::object();
    std::vector<std::string> violations;
    std::int64_t elapsed_ms = 0;

    bool passed() const { return violations.empty(); }
    // elapsed_ms is only included when `timing` is set, so reports are
    // reproducible byte for byte by default.
    Json to_json(bool timing = false) const;
    std::string dump(bool pretty = false, bool timing = false) const;
};

struct VerifyOptions {
    // "explicit" builds F and I_r as subspaces of U_r, "isotypic" sums
    // per-lambda multiplicities, "auto" picks by dim U_r.
    std::string route = "auto";
    std::size_t explicit_limit = 5000;
    // Refuse shapes with dim U_r above this.
    std::size_t dim_cap = 20000;
};

RunReport cmd_verify_theorem(const std::vector<int>& delta, int r, const VerifyOptions& opts = {});
RunReport cmd_verify_gss(int n, int r, const VerifyOptions& opts = {});
RunReport cmd_hilbert(const std::vector<int>& delta, const std::vector<int>& dims, int r_max);
// kind: "triple" (Sym^r of V1 x V2 x V3), "sym3" (Sym^r Sym^3) or "pair" (S_mu of V1 x V2).
RunReport cmd_plethysm(const std::string& kind, int r, const std::string& mu = "");
// mu empty means 1^r.
RunReport cmd_mult(const std::vector<int>& delta, int r, const std::string& lambda, const std::string& mu = "");
RunReport cmd_types(const std::vector<int>& delta, int r, const std::string& lambda);
RunReport cmd_pi_matrix(const std::vector<int>& delta, int r, const std::string& mu, bool with_blocks = false);
RunReport cmd_flatten_dim(const std::vector<int>& delta, int r, int k = 2, int minor_size = 0,
                          bool one_flattenings = false);

}  // namespace secantkit::cli
