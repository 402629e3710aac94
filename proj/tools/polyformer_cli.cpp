// Command-line front end: build networks from polynomial spec files, evaluate
// them, run the bound-verification harness, sweep (N, L) grids, print basis
// decompositions, and run the oracle self-tests.

#include "CLI11.hpp"

#include "polyformer/builder.hpp"
#include "polyformer/polynomial.hpp"
#include "polyformer/rng.hpp"
#include "polyformer/sawtooth.hpp"
#include "polyformer/serialize.hpp"
#include "polyformer/verify.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace polyformer;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("POLYFORMER_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return v;
        throw std::runtime_error("POLYFORMER_SEED is not an integer");
    }
    return 20240915ULL;
}

int run_selftest() {
    int failures = 0;
    const auto check = [&](const char* name, bool ok, double worst, double tol) {
        std::printf("%s  %s (worst %.3g, tol %.3g)\n", ok ? "pass" : "FAIL", name, worst, tol);
        if (!ok) ++failures;
    };

    {
        // Tent-map iterates: per-segment closed form against the recursion.
        double worst = 0.0;
        for (int i = 1; i <= 10; ++i)
            for (int g = 0; g <= 4096; ++g) {
                const double x = static_cast<double>(g) / 4096.0;
                worst = std::max(worst, std::abs(sawtooth_exact(i, x) - sawtooth_closed_form(i, x)));
            }
        check("sawtooth closed form vs recursion", worst <= 1e-12, worst, 1e-12);
    }
    {
        // Squaring approximant: signed error on segment [j,j+1]/2^K is exactly
        // -(x - j/2^K)(x - (j+1)/2^K).
        double worst = 0.0;
        for (int K : {1, 2, 3, 4, 6}) {
            const double h = std::ldexp(1.0, -K);
            for (int j = 0; j < (1 << K); ++j)
                for (int t = 0; t <= 16; ++t) {
                    const double x = (static_cast<double>(j) + t / 16.0) * h;
                    const double want = -(x - j * h) * (x - (j + 1) * h);
                    worst = std::max(worst, std::abs((square_ref(K, x) - x * x) - want));
                }
        }
        check("squaring gadget signed error form", worst <= 1e-10, worst, 1e-10);
    }
    {
        // Product identity for the symmetric basis, including the r = n and
        // r > n (vanishing head term) branches.
        SplitMix64 rng(default_seed());
        double worst = 0.0;
        int cases = 0;
        for (int n = 1; n <= 5 && cases < 160; ++n)
            for (const auto& t : enumerate_rank_tuples(2, 3)) {
                if (t.rank() > n + 1) continue;  // keep some r > n cases, skip far-degenerate
                for (const auto& q : enumerate_multi_indices(2, 2)) {
                    Matrix x(2, n);
                    for (auto& v : x.values) v = rng.uniform01();
                    worst = std::max(worst, std::abs(lemma6_residual(t, q, x)));
                    ++cases;
                }
            }
        std::printf("      product identity cases: %d\n", cases);
        check("basis product identity residual", worst <= 1e-9, worst, 1e-9);
    }
    {
        // Injective-sum evaluator vs the full permutation sum.
        SplitMix64 rng(default_seed() ^ 0xabcdULL);
        double worst = 0.0;
        for (int n = 1; n <= 6; ++n)
            for (const auto& t : enumerate_rank_tuples(2, 3)) {
                Matrix x(2, n);
                for (auto& v : x.values) v = rng.uniform01();
                worst = std::max(worst,
                                 std::abs(eval_monomial_sym(t, x) - eval_monomial_sym_permsum(t, x)));
            }
        check("injective-sum vs permutation-sum oracle", worst <= 1e-9, worst, 1e-9);
    }
    {
        // FNN-in-transformer embedding on the product gadget.
        const FfnNetwork prod = build_clamped_product_ffn(GadgetBudget{4, 2});
        const TransformerNetwork emb = embed_ffn_in_transformer(prod);
        SplitMix64 rng(default_seed() ^ 0x5eedULL);
        double worst = 0.0;
        for (int c = 0; c < 500; ++c) {
            Vector in{rng.uniform01(), rng.uniform01()};
            const Vector want = eval_ffn(prod, in);
            Matrix state = Matrix::zeros(emb.state_dim, 1);
            state.at(0, 0) = in[0];
            state.at(1, 0) = in[1];
            const Matrix out = eval_transformer(emb, state);
            worst = std::max(worst, std::abs(want[0] - out.at(0, 0)));
        }
        check("feed-forward embedding equivalence", worst <= 1e-12, worst, 1e-12);
    }

    std::printf("%s\n", failures == 0 ? "selftest: all oracle identities hold"
                                      : "selftest: FAILURES");
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"explicit transformer-weight compiler for column-symmetric polynomials"};
    app.require_subcommand(1);

    std::string poly_path, net_path, input_path, out_path, json_path;
    BuildBudget budget;
    std::uint64_t seed = 0;
    int samples = 2000;
    std::vector<int> n_list, l_list;

    const auto add_budget_flags = [&budget](CLI::App* cmd) {
        cmd->add_option("--d", budget.d, "rows per column")->required();
        cmd->add_option("--n", budget.n, "number of columns")->required();
        cmd->add_option("--s", budget.s, "target degree")->required();
        cmd->add_option("--N", budget.N, "sawtooth density (>= 2)");
        cmd->add_option("--L", budget.L, "refinement depth (>= 1)");
    };

    auto* cmd_build = app.add_subcommand("build", "compile a polynomial into explicit weights");
    cmd_build->add_option("--poly", poly_path, "polynomial spec file")->required();
    add_budget_flags(cmd_build);
    cmd_build->add_option("--out", out_path, "output JSON path")->required();

    auto* cmd_eval = app.add_subcommand("eval", "evaluate a built network on an input matrix");
    cmd_eval->add_option("--net", net_path, "network JSON from `build`")->required();
    cmd_eval->add_option("--input", input_path, "input matrix JSON")->required();

    auto* cmd_verify = app.add_subcommand("verify", "audit all error/size bounds");
    cmd_verify->add_option("--poly", poly_path, "polynomial spec file")->required();
    add_budget_flags(cmd_verify);
    cmd_verify->add_option("--seed", seed, "sampler seed (default: POLYFORMER_SEED or built-in)");
    cmd_verify->add_option("--samples", samples, "uniform sample count");
    cmd_verify->add_option("--json", json_path, "also write the report as JSON");

    auto* cmd_sweep = app.add_subcommand("sweep", "error decay across an (N, L) grid");
    cmd_sweep->add_option("--poly", poly_path, "polynomial spec file")->required();
    add_budget_flags(cmd_sweep);
    cmd_sweep->add_option("--N-list", n_list, "N values")->required()->delimiter(',');
    cmd_sweep->add_option("--L-list", l_list, "L values")->required()->delimiter(',');
    cmd_sweep->add_option("--out", out_path, "output CSV path")->required();
    cmd_sweep->add_option("--seed", seed, "sampler seed");
    cmd_sweep->add_option("--samples", samples, "uniform sample count");

    auto* cmd_decomp = app.add_subcommand("decompose", "print the symmetric-basis decomposition");
    cmd_decomp->add_option("--poly", poly_path, "polynomial spec file")->required();
    cmd_decomp->add_option("--d", budget.d, "rows per column")->required();
    cmd_decomp->add_option("--n", budget.n, "number of columns")->required();

    auto* cmd_selftest = app.add_subcommand("selftest", "oracle identity checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!cmd_verify->count("--seed") && !cmd_sweep->count("--seed")) seed = default_seed();

        if (cmd_build->parsed()) {
            const Polynomial f = polynomial_from_text(read_file(poly_path), budget.d, budget.n);
            const BuildResult r = assemble_theorem1(f, budget);
            write_file(out_path, build_to_json(r));
            const SizeReport sr = size_report(r.net);
            std::printf("wrote %s: width %lld, depth %lld, params %lld\n", out_path.c_str(),
                        sr.width, sr.depth, sr.parameter_count);
            return 0;
        }
        if (cmd_eval->parsed()) {
            const BuildResult r = build_from_json(read_file(net_path));
            const Matrix x = matrix_from_json(read_file(input_path));
            const Matrix state = embed_input(x, r.rows);
            const Matrix out = eval_transformer(r.net, state);
            std::printf("readout %.17g\n", read_out(out, r.readout));
            std::printf("%s\n", matrix_to_json(out).c_str());
            return 0;
        }
        if (cmd_verify->parsed()) {
            const Polynomial f = polynomial_from_text(read_file(poly_path), budget.d, budget.n);
            const Sampler s = make_default_sampler(budget.d, budget.n, seed, samples);
            const BoundReport rep = check_bounds(f, budget, s);
            std::fputs(report_to_text(rep).c_str(), stdout);
            if (!json_path.empty()) write_file(json_path, report_to_json(rep));
            return rep.all_pass() ? 0 : 1;
        }
        if (cmd_sweep->parsed()) {
            const Polynomial f = polynomial_from_text(read_file(poly_path), budget.d, budget.n);
            const Sampler s = make_default_sampler(budget.d, budget.n, seed, samples);
            write_file(out_path, sweep(f, budget, n_list, l_list, s));
            std::printf("wrote %s\n", out_path.c_str());
            return 0;
        }
        if (cmd_decomp->parsed()) {
            const Polynomial f = polynomial_from_text(read_file(poly_path), budget.d, budget.n);
            const Decomposition dec = decompose(f);
            std::printf("constant %s\n", dec.constant.to_string().c_str());
            for (const auto& [c, t] : dec.components)
                std::printf("%s * m_%s\n", c.to_string().c_str(), t.to_string().c_str());
            return 0;
        }
        if (cmd_selftest->parsed()) return run_selftest();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
