#include "doctest.h"

#include "polyformer/builder.hpp"
#include "polyformer/rng.hpp"
#include "polyformer/sawtooth.hpp"
#include "polyformer/verify.hpp"

#include <cmath>
#include <stdexcept>

using namespace polyformer;

namespace {

Matrix random_input(int d, int n, SplitMix64& rng) {
    Matrix x(d, n);
    for (auto& v : x.values) v = rng.uniform01();
    return x;
}

}  // namespace

TEST_CASE("row layout: shared positions for inputs, bank, tuples") {
    const BuildBudget b{2, 3, 2, 4, 2};
    const auto [net, rows] = build_rank1_network(b);
    CHECK(rows.bank_begin == 2);
    CHECK(static_cast<int>(rows.bank.size()) == 3);  // (2,0), (1,1), (0,2)
    CHECK(rows.row_of_input(1) == 1);
    CHECK(rows.row_of_monomial(MultiIndex{{1, 0}}) == 0);  // degree-1 lives on inputs
    CHECK(rows.row_of_monomial(MultiIndex{{2, 0}}) == rows.bank_begin);
    CHECK(rows.row_of_tuple(canonical_tuple({MultiIndex{{0, 1}}})) == 1);
    CHECK(rows.scratch_rows == 6 * 3);
    CHECK(rows.state_dim == 2 + 3 + 6 * 3);
    CHECK(net.state_dim == rows.state_dim);
    CHECK_THROWS_AS(rows.row_of_monomial(MultiIndex{{3, 0}}), std::out_of_range);
    CHECK_THROWS_AS(rows.row_of_input(5), std::out_of_range);

    const auto [rnet, rrows] = build_rank_recursion(b);
    CHECK(rrows.bank_begin == rows.bank_begin);  // same convention across builders
    CHECK(rrows.tuple_begin == rows.tuple_begin);
    CHECK(static_cast<int>(rrows.tuples.size()) == 3);
}

TEST_CASE("budget validation") {
    CHECK_THROWS_AS((BuildBudget{0, 1, 1, 4, 1}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((BuildBudget{1, 1, 1, 1, 1}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((BuildBudget{1, 1, 1, 4, 0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS(build_rank_recursion(BuildBudget{1, 2, 1, 4, 1}), std::invalid_argument);
}

TEST_CASE("monomial bank: the x^2 row is the squaring gadget, degree-1 exact") {
    const BuildBudget b{1, 1, 2, 4, 2};
    const auto [net, rows] = build_monomial_bank(b);
    CHECK(net.depth() == (b.s - 1) * (b.L + 1));
    const int sq_row = rows.row_of_monomial(MultiIndex{{2}});
    double worst_sq = 0.0, worst_lin = 0.0;
    for (int g = 0; g <= 512; ++g) {
        const double x = static_cast<double>(g) / 512.0;
        Vector in(static_cast<size_t>(net.input_dim()), 0.0);
        in[0] = x;
        const Vector out = eval_ffn(net, in);
        worst_sq = std::max(worst_sq,
                            std::abs(out[static_cast<size_t>(sq_row)] -
                                     square_ref(b.gadget().rounds(), x)));
        worst_lin = std::max(worst_lin, std::abs(out[0] - x));
    }
    CHECK(worst_sq <= 1e-12);
    CHECK(worst_lin <= 1e-13);
}

TEST_CASE("monomial bank: per-degree error bounds and size budgets") {
    for (int d : {1, 2})
        for (int s : {2, 3})
            for (int N : {2, 4})
                for (int L : {1, 2}) {
                    const BuildBudget b{d, 1, s, N, L};
                    INFO("d=", d, " s=", s, " N=", N, " L=", L);
                    const auto [net, rows] = build_monomial_bank(b);
                    const SizeReport sr = size_report(net);
                    CHECK(sr.width <= bank_width_limit(b));
                    CHECK(sr.depth == bank_depth_limit(b));
                    const Sampler smp = make_default_sampler(d, 1, 7, 300);
                    const double unit = std::pow(static_cast<double>(N), -L);
                    for (const auto& p : enumerate_multi_indices(d, s)) {
                        const ErrorStats st = measure_bank_row_error(net, rows, p, smp);
                        if (p.degree() == 1)
                            CHECK(st.max_abs_error <= 1e-10);
                        else
                            CHECK(st.max_abs_error <= (p.degree() - 1) * unit * (1 + 1e-9));
                    }
                }
}

TEST_CASE("monomial bank at s=1 is a plain identity") {
    const BuildBudget b{3, 1, 1, 4, 2};
    const auto [net, rows] = build_monomial_bank(b);
    CHECK(net.depth() == 0);
    CHECK(rows.bank.empty());
    const Vector out = eval_ffn(net, {0.25, 0.5, 0.75});
    CHECK(out[0] == 0.25);
    CHECK(out[1] == 0.5);
    CHECK(out[2] == 0.75);
}

TEST_CASE("rank-1 network: degree-1 rows exact, degree-2 within the stated bound") {
    const BuildBudget b{1, 3, 2, 4, 2};
    const auto [net, rows] = build_rank1_network(b);
    const SizeReport sr = size_report(net);
    CHECK(sr.width <= rank1_width_limit(b));
    CHECK(sr.depth <= rank1_depth_limit(b));
    CHECK(static_cast<int>(net.blocks.size()) == (b.s - 1) * (b.L + 1) + 1);

    const Sampler smp = make_default_sampler(1, 3, 19, 1000);
    const ErrorStats lin =
        measure_tuple_row_error(net, rows, canonical_tuple({MultiIndex{{1}}}), smp);
    CHECK(lin.max_abs_error <= 1e-10);
    const ErrorStats sq =
        measure_tuple_row_error(net, rows, canonical_tuple({MultiIndex{{2}}}), smp);
    CHECK(sq.max_abs_error <= rank1_error_bound(b, 2) * (1 + 1e-9));  // 3 * 4^{-2}
    CHECK(rank1_error_bound(b, 2) == 0.1875);
}

TEST_CASE("rank recursion: single multiplication step reproduces the product identity") {
    // d=1, n=3: m_(1),(1) = scale * product of the rank-1 rows minus m_(2),
    // computed from exactly-seeded rank-1 values.
    const BuildBudget b{1, 3, 2, 4, 2};
    const auto [net, rows] = build_rank_recursion(b);
    CHECK(static_cast<int>(net.blocks.size()) == recursion_depth_limit(b));
    CHECK(size_report(net).width <= recursion_width_limit(b));

    const int row_m1 = rows.row_of_monomial(MultiIndex{{1}});
    const int row_m2 = rows.row_of_monomial(MultiIndex{{2}});
    const RankTuple t11 = canonical_tuple({MultiIndex{{1}}, MultiIndex{{1}}});
    const int row_t = rows.row_of_tuple(t11);

    SplitMix64 rng(20);
    double worst = 0.0;
    for (int c = 0; c < 200; ++c) {
        const Matrix x = random_input(1, 3, rng);
        double s1 = 0.0, s2 = 0.0;
        for (int j = 0; j < 3; ++j) {
            s1 += x.at(0, j);
            s2 += x.at(0, j) * x.at(0, j);
        }
        Matrix state = Matrix::zeros(rows.state_dim, 4);
        state.at(row_m1, 3) = s1;
        state.at(row_m2, 3) = s2;
        const Matrix out = eval_transformer(net, state);
        worst = std::max(worst, std::abs(out.at(row_t, 3) - (s1 * s1 - s2)));
    }
    // with exact rank-1 inputs the only error source is one product gadget:
    // n * P(n,1) * 2 * 4^{-(Lk+1)} = 9 * 2 / 1024
    CHECK(worst <= 9.0 * 2.0 / 1024.0 * (1 + 1e-9));
}

TEST_CASE("rank recursion: rank above n is pinned to exactly zero") {
    const BuildBudget b{1, 1, 2, 4, 2};
    const auto [net, rows] = build_rank_recursion(b);
    const RankTuple t11 = canonical_tuple({MultiIndex{{1}}, MultiIndex{{1}}});
    Matrix state = Matrix::zeros(rows.state_dim, 2);
    state.at(rows.row_of_monomial(MultiIndex{{1}}), 1) = 0.8;
    state.at(rows.row_of_monomial(MultiIndex{{2}}), 1) = 0.64;
    const Matrix out = eval_transformer(net, state);
    CHECK(out.at(rows.row_of_tuple(t11), 1) == 0.0);
}

TEST_CASE("assembled tuple rows stay inside their clamp range") {
    const BuildBudget b{2, 3, 3, 4, 2};
    const Polynomial f = random_symmetric_polynomial(2, 3, 3, 5);
    const BuildResult r = assemble_theorem1(f, b);
    SplitMix64 rng(21);
    for (int c = 0; c < 40; ++c) {
        const Matrix out = eval_transformer(r.net, embed_input(random_input(2, 3, rng), r.rows));
        for (size_t i = 0; i < r.rows.tuples.size(); ++i) {
            const double v = out.at(r.rows.tuple_begin + static_cast<int>(i), 3);
            const double ceiling =
                static_cast<double>(falling_factorial(b.n, r.rows.tuples[i].rank()));
            CHECK(v >= 0.0);
            CHECK(v <= ceiling + 1e-12);
        }
    }
}

TEST_CASE("assemble at s=1 is exact including the constant term") {
    // f = 1/2 + (1/6) sum_j x_{1j}
    std::vector<Term> terms;
    Term c0;
    c0.coeff = Rational(1, 2);
    c0.exponents.assign(3, 0);
    terms.push_back(c0);
    for (int j = 0; j < 3; ++j) {
        Term t;
        t.coeff = Rational(1, 6);
        t.exponents.assign(3, 0);
        t.exponents[static_cast<size_t>(j)] = 1;
        terms.push_back(t);
    }
    const Polynomial f = make_polynomial(1, 3, std::move(terms));
    const BuildBudget b{1, 3, 1, 4, 2};
    const BuildResult r = assemble_theorem1(f, b);
    CHECK(r.net.blocks.size() == 1);
    CHECK(r.readout.bias == 0.5);
    const Sampler smp = make_default_sampler(1, 3, 23, 500);
    CHECK(measure_error(r.net, r.readout, f, smp).max_abs_error <= 1e-10);
}

TEST_CASE("assemble enforces its preconditions") {
    const BuildBudget b{1, 2, 1, 4, 1};
    // wrong dimensions
    const Polynomial f1 = random_symmetric_polynomial(2, 3, 2, 1);
    CHECK_THROWS_AS(assemble_theorem1(f1, b), std::invalid_argument);
    // degree above budget
    const Polynomial f2 = random_symmetric_polynomial(1, 2, 2, 1);
    CHECK_THROWS_AS(assemble_theorem1(f2, b), std::invalid_argument);
    // value at ones above 1
    const Polynomial f3 = scale(random_symmetric_polynomial(1, 2, 1, 1), Rational(3, 2));
    CHECK_THROWS_AS(assemble_theorem1(f3, b), std::invalid_argument);
}

TEST_CASE("full pipeline: sizes, block count, and a quick accuracy probe") {
    const BuildBudget b{2, 3, 2, 4, 2};
    const Polynomial f = random_symmetric_polynomial(2, 3, 2, 9);
    const BuildResult r = assemble_theorem1(f, b);
    const SizeReport sr = size_report(r.net);
    CHECK(sr.width <= full_width_limit(b));
    CHECK(sr.depth <= full_depth_limit(b));
    CHECK(static_cast<int>(r.net.blocks.size()) == (b.s - 1) * (2 * b.L + 3) + 1);
    CHECK(r.readout.col == 3);
    CHECK(r.readout.row == r.rows.readout_row);

    // only the summation block may carry live attention
    int live = 0;
    for (const auto& blk : r.net.blocks) {
        bool nonzero = false;
        for (double v : blk.attn.w_o.values) nonzero |= v != 0.0;
        live += nonzero ? 1 : 0;
    }
    CHECK(live == 1);

    const Sampler smp = make_default_sampler(2, 3, 29, 400);
    const ErrorStats st = measure_error(r.net, r.readout, f, smp);
    CHECK(st.max_abs_error < end_to_end_error_bound(b, normalize_check(f)));
}

TEST_CASE("embed_input validates and pads") {
    const BuildBudget b{2, 3, 2, 4, 2};
    const auto [net, rows] = build_rank1_network(b);
    CHECK_THROWS_AS(embed_input(Matrix::zeros(3, 3), rows), std::invalid_argument);
    const Matrix st = embed_input(Matrix(2, 3, 0.5), rows);
    CHECK(st.rows == rows.state_dim);
    CHECK(st.cols == 4);
    CHECK(st.at(0, 0) == 0.5);
    CHECK(st.at(2, 0) == 0.0);
    CHECK(st.at(0, 3) == 0.0);
}

TEST_CASE("error-bound formulas evaluate as stated") {
    const BuildBudget b{2, 4, 3, 4, 2};
    CHECK(full_width_limit(b) == 12 * 64 * 4);
    CHECK(full_depth_limit(b) == 2 * 3 * 2 + 3 * 3);
    CHECK(bank_depth_limit(b) == 2 * 3);
    CHECK(rank1_depth_limit(b) == 7);
    CHECK(recursion_depth_limit(b) == 8);
    CHECK(rank1_error_bound(b, 3) == doctest::Approx(4 * 2 * std::pow(4.0, -2)));
    const RankTuple t = canonical_tuple({MultiIndex{{2, 0}}, MultiIndex{{1, 1}}});
    // (P(5,2) * (3*3) - 16) * 4^{-2}
    CHECK(tuple_error_bound(b, t) == doctest::Approx((20 * 9 - 16) * std::pow(4.0, -2)));
    CHECK(end_to_end_error_bound(b, 0.5) == doctest::Approx(512 * 0.5 * std::pow(4.0, -2)));
}
