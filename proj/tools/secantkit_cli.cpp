#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "secantkit/combinatorics.hpp"
#include "secantkit/parallel.hpp"

using namespace secantkit;
using namespace secantkit::cli;

namespace {

std::vector<int> ints(const std::string& text) { return parse_int_list(text); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"secantkit: generic equations of secant line varieties"};
    app.require_subcommand(1);
    app.fallthrough();

    bool pretty = false, timing = false;
    unsigned threads = 0;
    app.add_flag("--pretty", pretty, "Indented JSON");
    app.add_flag("--timing", timing, "Include elapsed_ms in the report");
    app.add_option("--threads", threads, "Worker threads (0 = all cores); SECANTKIT_THREADS overrides");

    std::string delta, dims, lambda, mu, kind, route = "auto";
    int r = 0, n = 0, k = 2, minor = 0;
    std::size_t explicit_limit = 5000, dim_cap = 20000;
    bool blocks = false, one_flat = false;
    std::function<RunReport()> run;

    auto verify_opts = [&](CLI::App* sub) {
        sub->add_option("--route", route, "auto, explicit or isotypic");
        sub->add_option("--explicit-limit", explicit_limit, "Largest dim U for the explicit route under auto");
        sub->add_option("--cap", dim_cap, "Refuse shapes with larger dim U");
    };
    auto opts = [&] {
        VerifyOptions o;
        o.route = route;
        o.explicit_limit = explicit_limit;
        o.dim_cap = dim_cap;
        return o;
    };

    auto* vt = app.add_subcommand("verify-theorem", "Check dim F = dim I_r and the per-lambda multiplicities");
    vt->add_option("--delta", delta, "Degrees, e.g. 1,1,1")->required();
    vt->add_option("--r", r, "Degree r")->required();
    verify_opts(vt);
    vt->callback([&] { run = [&] { return cmd_verify_theorem(ints(delta), r, opts()); }; });

    auto* vg = app.add_subcommand("verify-gss", "verify-theorem with delta = 1^n");
    vg->add_option("--n", n, "Number of factors")->required();
    vg->add_option("--r", r, "Degree r")->required();
    verify_opts(vg);
    vg->callback([&] { run = [&] { return cmd_verify_gss(n, r, opts()); }; });

    auto* hb = app.add_subcommand("hilbert", "Hilbert function from the closed form");
    hb->add_option("--delta", delta)->required();
    hb->add_option("--dims", dims, "Dimensions of the vector spaces, each >= 2")->required();
    hb->add_option("--r", r, "Largest degree")->required();
    hb->callback([&] { run = [&] { return cmd_hilbert(ints(delta), ints(dims), r); }; });

    auto* pl = app.add_subcommand("plethysm", "Coordinate ring decompositions");
    pl->add_option("--kind", kind, "triple, sym3 or pair")->required();
    pl->add_option("--r", r)->required();
    pl->add_option("--mu", mu, "Partition of r for kind=pair");
    pl->callback([&] { run = [&] { return cmd_plethysm(kind, r, mu); }; });

    auto* ml = app.add_subcommand("mult", "Multiplicity of lambda in U_mu by symmetrizer and by characters");
    ml->add_option("--delta", delta)->required();
    ml->add_option("--r", r)->required();
    ml->add_option("--lambda", lambda, "e.g. 2,1|2,1|2,1")->required();
    ml->add_option("--mu", mu, "Partition of r, default 1^r");
    ml->callback([&] { run = [&] { return cmd_mult(ints(delta), r, lambda, mu); }; });

    auto* ty = app.add_subcommand("types", "Admissible MCB graph types");
    ty->add_option("--delta", delta)->required();
    ty->add_option("--r", r)->required();
    ty->add_option("--lambda", lambda)->required();
    ty->callback([&] { run = [&] { return cmd_types(ints(delta), r, lambda); }; });

    auto* pm = app.add_subcommand("pi-matrix", "Dump the prolongation matrix pi_mu");
    pm->add_option("--delta", delta)->required();
    pm->add_option("--r", r)->required();
    pm->add_option("--mu", mu, "Partition of r")->required();
    pm->add_flag("--blocks", blocks, "Also list source and target blocks");
    pm->callback([&] { run = [&] { return cmd_pi_matrix(ints(delta), r, mu, blocks); }; });

    auto* fd = app.add_subcommand("flatten-dim", "Dimension of the flattening span per split");
    fd->add_option("--delta", delta)->required();
    fd->add_option("--r", r)->required();
    fd->add_option("--k", k, "Secant order");
    fd->add_option("--minor-size", minor, "Default k + 1");
    fd->add_flag("--one-flattenings", one_flat, "Only splits with |A| = 1");
    fd->callback([&] { run = [&] { return cmd_flatten_dim(ints(delta), r, k, minor, one_flat); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (const char* env = std::getenv("SECANTKIT_THREADS")) threads = static_cast<unsigned>(std::stoul(env));
    if (threads) set_thread_count(threads);

    try {
        const auto start = std::chrono::steady_clock::now();
        RunReport rep = run();
        rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                             .count();
        std::cout << rep.dump(pretty, timing) << '\n';
        if (!rep.passed())
            for (const auto& v : rep.violations) std::cerr << "violation: " << v << '\n';
        return rep.passed() ? 0 : 1;
    } catch (const std::exception& e) {
        Json err = {{"status", "error"}, {"error", e.what()}};
        std::cout << err.dump(pretty ? 2 : -1) << '\n';
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
