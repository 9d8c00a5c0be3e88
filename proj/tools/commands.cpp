#include "commands.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "secantkit/closedform.hpp"
#include "secantkit/flattening.hpp"
#include "secantkit/graphmodel.hpp"
#include "secantkit/prolongation.hpp"
#include "secantkit/repmult.hpp"
#include "secantkit/zeroweight.hpp"

namespace secantkit::cli {

namespace {

Json big(const Integer& x) {
    if (x.fits_slong_p()) return x.get_si();
    return x.get_str();
}

Json table_json(const DecompositionTable& t) {
    Json out = Json::array();
    for (const auto& [lam, m] : t) out.push_back({{"lambda", lam.to_string()}, {"multiplicity", m}});
    return out;
}

template <class A, class B>
void expect_equal(RunReport& rep, const std::string& what, const A& a, const B& b) {
    if (a == b) return;
    std::ostringstream os;
    os << what << ": " << a << " != " << b;
    rep.violations.push_back(os.str());
}

Partition parse_mu(const std::string& mu, int r) {
    Partition p = mu.empty() ? Partition(std::vector<int>(r, 1)) : Partition::parse(mu);
    if (p.size() != r) throw std::invalid_argument("mu must be a partition of r");
    return p;
}

}  // namespace

Json RunReport::to_json(bool timing) const {
    Json j;
    j["command"] = command;
    j["parameters"] = parameters;
    j["results"] = results;
    j["status"] = passed() ? "pass" : "fail";
    if (!passed()) j["violations"] = violations;
    if (timing) j["elapsed_ms"] = elapsed_ms;
    return j;
}

std::string RunReport::dump(bool pretty, bool timing) const { return to_json(timing).dump(pretty ? 2 : -1); }

RunReport cmd_verify_theorem(const std::vector<int>& delta, int r, const VerifyOptions& opts) {
    RunReport rep;
    rep.command = "verify-theorem";
    rep.parameters = {{"delta", delta}, {"r", r}, {"route", opts.route}};
    if (opts.route != "auto" && opts.route != "explicit" && opts.route != "isotypic")
        throw std::invalid_argument("route must be auto, explicit or isotypic");
    const Shape shape(delta, r);
    const Integer N = zero_weight_dimension(shape);
    rep.results["dim_U"] = big(N);
    if (N > Integer(static_cast<unsigned long>(opts.dim_cap))) {
        rep.results["refused"] = true;
        rep.violations.push_back("dim U = " + N.get_str() + " exceeds the cap " + std::to_string(opts.dim_cap));
        return rep;
    }
    const std::size_t n = N.get_ui();
    const std::string route =
        opts.route == "auto" ? (n <= opts.explicit_limit ? "explicit" : "isotypic") : opts.route;
    rep.results["route"] = route;

    const IsotypicAnalysis analysis(shape);
    const auto rows = analysis.analyze_all();
    Integer iso_U = 0, iso_I = 0, iso_F = 0;
    for (const auto& row : rows) {
        const Integer d = dim_specht(row.lam);
        iso_U += d * static_cast<unsigned long>(row.in_U);
        iso_I += d * static_cast<unsigned long>(row.in_I);
        iso_F += d * static_cast<unsigned long>(row.in_F);
    }
    expect_equal(rep, "sum of multiplicities in U", iso_U, N);

    Integer dim_F = iso_F, dim_I = iso_I;
    if (route == "explicit") {
        set_max_ambient_dim(std::max(max_ambient_dim(), n));
        const Subspace F = flattening_space(shape);
        const Subspace I = generic_ideal_part(shape);
        dim_F = static_cast<unsigned long>(F.dim());
        dim_I = static_cast<unsigned long>(I.dim());
        bool inside = true;
        for (const auto& v : F.integer_basis()) inside = inside && I.contains(v);
        rep.results["F_inside_I"] = inside;
        if (!inside) rep.violations.push_back("F is not contained in I_r");
        expect_equal(rep, "dim F (explicit vs isotypic)", dim_F, iso_F);
        expect_equal(rep, "dim I_r (explicit vs isotypic)", dim_I, iso_I);
    }
    rep.results["dim_F"] = big(dim_F);
    rep.results["dim_I"] = big(dim_I);
    expect_equal(rep, "dim F vs dim I_r", dim_F, dim_I);

    Json lambdas = Json::array();
    for (const auto& row : rows) {
        const auto image = static_cast<std::int64_t>(row.in_U - row.in_I);
        if (row.lam.max_length() > 2) {
            if (image != 0) rep.violations.push_back(row.lam.to_string() + " survives with more than two rows");
            continue;
        }
        const auto closed = m_lambda(shape, row.lam);
        const auto types = count_types(shape, row.lam);
        lambdas.push_back(
            {{"lambda", row.lam.to_string()}, {"closed_form", closed}, {"symmetrizer", image}, {"type_count", types}});
        expect_equal(rep, "closed form vs symmetrizer at " + row.lam.to_string(), closed, image);
        expect_equal(rep, "closed form vs type count at " + row.lam.to_string(), closed, types);
    }
    rep.results["lambdas"] = std::move(lambdas);
    return rep;
}

RunReport cmd_verify_gss(int n, int r, const VerifyOptions& opts) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    auto rep = cmd_verify_theorem(std::vector<int>(n, 1), r, opts);
    rep.command = "verify-gss";
    rep.parameters = {{"n", n}, {"r", r}, {"route", opts.route}};
    return rep;
}

RunReport cmd_hilbert(const std::vector<int>& delta, const std::vector<int>& dims, int r_max) {
    RunReport rep;
    rep.command = "hilbert";
    rep.parameters = {{"delta", delta}, {"dims", dims}, {"r_max", r_max}};
    if (r_max < 1) throw std::invalid_argument("r_max must be positive");
    Json values = Json::array();
    for (int r = 1; r <= r_max; ++r) {
        const Shape shape(delta, r);
        values.push_back(
            {{"r", r}, {"value", big(hilbert(shape, dims))}, {"table", table_json(closed_form_table(shape))}});
    }
    rep.results["values"] = std::move(values);
    return rep;
}

RunReport cmd_plethysm(const std::string& kind, int r, const std::string& mu) {
    RunReport rep;
    rep.command = "plethysm";
    rep.parameters = {{"kind", kind}, {"r", r}};
    DecompositionTable table;
    std::vector<int> dims;
    Integer expected;
    if (kind == "triple") {
        table = sym_of_triple_tensor(r);
        dims = {2, 2, 2};
        expected = binomial(r + 7, 7);
    } else if (kind == "sym3") {
        table = sym_of_sym3(r);
        dims = {2};
        expected = binomial(r + 3, 3);
    } else if (kind == "pair") {
        const Partition p = Partition::parse(mu);
        if (p.size() != r) throw std::invalid_argument("mu must be a partition of r");
        rep.parameters["mu"] = mu;
        table = schur_of_pair_tensor(p);
        dims = {2, 2};
        expected = dim_schur(p, 4);
    } else {
        throw std::invalid_argument("kind must be triple, sym3 or pair");
    }
    rep.results["table"] = table_json(table);
    const Integer dim = table_dimension(table, dims);
    rep.results["dimension"] = big(dim);
    expect_equal(rep, "dimension", dim, expected);
    return rep;
}

RunReport cmd_mult(const std::vector<int>& delta, int r, const std::string& lambda, const std::string& mu) {
    RunReport rep;
    rep.command = "mult";
    const Shape shape(delta, r);
    const NPartition lam = NPartition::parse(lambda);
    check_profile(lam, delta, r);
    const Partition m = parse_mu(mu, r);
    rep.parameters = {{"delta", delta}, {"r", r}, {"lambda", lam.to_string()}, {"mu", m.to_string()}};
    const auto sym = multiplicity_in_full(lam, shape, m);
    const auto chr = multiplicity_char(lam, shape, m);
    rep.results["symmetrizer"] = sym;
    rep.results["character"] = chr;
    expect_equal(rep, "symmetrizer vs character", static_cast<std::int64_t>(sym), chr);
    if (m.length() == r) {
        const auto row = IsotypicAnalysis(shape).analyze(lam);
        rep.results["in_I"] = row.in_I;
        rep.results["in_F"] = row.in_F;
        expect_equal(rep, "multiplicity in U", row.in_U, sym);
    }
    return rep;
}

RunReport cmd_types(const std::vector<int>& delta, int r, const std::string& lambda) {
    RunReport rep;
    rep.command = "types";
    const Shape shape(delta, r);
    const NPartition lam = NPartition::parse(lambda);
    check_profile(lam, delta, r);
    rep.parameters = {{"delta", delta}, {"r", r}, {"lambda", lam.to_string()}};
    Json types = Json::array();
    for (const auto& t : admissible_types(shape, lam)) types.push_back({t.a, t.b});
    const auto count = count_types(shape, lam);
    const auto closed = m_lambda(shape, lam);
    rep.results["types"] = std::move(types);
    rep.results["count"] = count;
    rep.results["closed_form"] = closed;
    expect_equal(rep, "type count vs closed form", count, closed);
    return rep;
}

RunReport cmd_pi_matrix(const std::vector<int>& delta, int r, const std::string& mu, bool with_blocks) {
    RunReport rep;
    rep.command = "pi-matrix";
    const Shape shape(delta, r);
    const Partition m = parse_mu(mu, r);
    rep.parameters = {{"delta", delta}, {"r", r}, {"mu", m.to_string()}, {"with_blocks", with_blocks}};
    const PiMatrix pi = build_pi(shape, m);
    const ExactMatrix mat = pi.matrix();
    rep.results["rows"] = mat.rows();
    rep.results["cols"] = mat.cols();
    rep.results["nnz"] = mat.nnz();
    rep.results["dump"] = mat.dump();
    if (with_blocks) {
        Json src = Json::array(), dst = Json::array();
        for (const auto& b : pi.source->blocks()) src.push_back(b.to_string());
        for (const auto& b : pi.target->blocks()) dst.push_back(b.to_string());
        rep.results["source_blocks"] = std::move(src);
        rep.results["target_blocks"] = std::move(dst);
    }
    return rep;
}

RunReport cmd_flatten_dim(const std::vector<int>& delta, int r, int k, int minor_size, bool one_flattenings) {
    RunReport rep;
    rep.command = "flatten-dim";
    const Shape shape(delta, r, k);
    rep.parameters = {{"delta", delta}, {"r", r}, {"k", k}, {"minor_size", minor_size ? minor_size : k + 1},
                      {"one_flattenings", one_flattenings}};
    set_max_ambient_dim(std::max(max_ambient_dim(), static_cast<std::size_t>(zero_weight_dimension(shape).get_ui())));
    FlatteningOptions fo;
    fo.minor_size = minor_size;
    fo.one_flattenings_only = one_flattenings;
    const auto res = build_flattening_space(shape, fo);
    Json splits = Json::array();
    for (const auto& s : res.splits)
        splits.push_back({{"split", s.split.to_string()}, {"generators", big(s.generators)}, {"dim", s.dim}});
    rep.results["dim_U"] = big(zero_weight_dimension(shape));
    rep.results["dim"] = res.span.dim();
    rep.results["saturated"] = res.saturated;
    rep.results["splits"] = std::move(splits);
    return rep;
}

}  // namespace secantkit::cli
