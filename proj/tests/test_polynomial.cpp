#include "doctest.h"

#include "polyformer/polynomial.hpp"
#include "polyformer/rng.hpp"

#include <algorithm>
#include <stdexcept>
#include <cmath>

using namespace polyformer;

namespace {

Term term(int d, int n, Rational c, std::initializer_list<std::array<int, 3>> entries) {
    Term t;
    t.coeff = c;
    t.exponents.assign(static_cast<size_t>(d) * static_cast<size_t>(n), 0);
    for (const auto& [i, j, e] : entries) t.exponents[static_cast<size_t>(j * d + i)] = e;
    return t;
}

Matrix random_input(int d, int n, SplitMix64& rng) {
    Matrix x(d, n);
    for (auto& v : x.values) v = rng.uniform01();
    return x;
}

bool same_terms(const Polynomial& a, const Polynomial& b) {
    if (a.d != b.d || a.n != b.n || a.terms.size() != b.terms.size()) return false;
    for (size_t i = 0; i < a.terms.size(); ++i)
        if (a.terms[i].coeff != b.terms[i].coeff || a.terms[i].exponents != b.terms[i].exponents)
            return false;
    return true;
}

}  // namespace

TEST_CASE("expand_monomial_sym: repeated part carries its multiplicity") {
    // m_{(1),(1)} over n=3 columns: 2 * (x1x2 + x1x3 + x2x3)
    const RankTuple t = canonical_tuple({MultiIndex{{1}}, MultiIndex{{1}}});
    const Polynomial f = expand_monomial_sym(t, 3);
    REQUIRE(f.terms.size() == 3);
    for (const auto& tm : f.terms) CHECK(tm.coeff == Rational(2));
    SplitMix64 rng(31);
    const Matrix x = random_input(1, 3, rng);
    CHECK(eval_polynomial(f, x) == doctest::Approx(eval_monomial_sym(t, x)).epsilon(1e-14));
}

TEST_CASE("expand_monomial_sym: distinct parts enumerate ordered pairs") {
    const RankTuple t = canonical_tuple({MultiIndex{{1, 1}}, MultiIndex{{1, 0}}});
    const Polynomial f = expand_monomial_sym(t, 3);
    CHECK(f.terms.size() == 6);
    for (const auto& tm : f.terms) CHECK(tm.coeff == Rational(1));
}

TEST_CASE("expand_monomial_sym: rank exceeding n gives the zero polynomial") {
    const RankTuple t =
        canonical_tuple({MultiIndex{{1}}, MultiIndex{{1}}, MultiIndex{{1}}});
    CHECK(expand_monomial_sym(t, 2).terms.empty());
}

TEST_CASE("monomial value at the all-ones matrix is the falling factorial") {
    for (int n : {1, 2, 3, 5}) {
        Matrix ones(2, n, 1.0);
        for (const auto& t : enumerate_rank_tuples(2, 3))
            CHECK(eval_monomial_sym(t, ones) ==
                  doctest::Approx(static_cast<double>(falling_factorial(n, t.rank())))
                      .epsilon(1e-12));
    }
}

TEST_CASE("injective-sum evaluator agrees with the permutation-sum oracle") {
    SplitMix64 rng(32);
    int cases = 0;
    for (int n : {1, 2, 3, 4, 6})
        for (const auto& t : enumerate_rank_tuples(2, 3)) {
            const Matrix x = random_input(2, n, rng);
            const double a = eval_monomial_sym(t, x);
            const double b = eval_monomial_sym_permsum(t, x);
            CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)));
            ++cases;
        }
    CHECK(cases >= 50);
}

TEST_CASE("product identity residual vanishes, including degenerate ranks") {
    SplitMix64 rng(33);
    int cases = 0;
    for (int n : {2, 3, 4})
        for (const auto& t : enumerate_rank_tuples(2, 2))
            for (const auto& q : enumerate_multi_indices(2, 2)) {
                const Matrix x = random_input(2, n, rng);
                CHECK(std::abs(lemma6_residual(t, q, x)) <= 1e-9);
                ++cases;
            }
    CHECK(cases >= 100);

    // r = n: the head term on the right-hand side has rank n+1 and vanishes
    const RankTuple t2 = canonical_tuple({MultiIndex{{1}}, MultiIndex{{1}}});
    const Matrix x2 = random_input(1, 2, rng);
    CHECK(std::abs(lemma6_residual(t2, MultiIndex{{2}}, x2)) <= 1e-12);
    // r > n: both sides are identically zero
    const RankTuple t3 = canonical_tuple({MultiIndex{{1}}, MultiIndex{{1}}, MultiIndex{{1}}});
    CHECK(lemma6_residual(t3, MultiIndex{{1}}, x2) == 0.0);
}

TEST_CASE("asymmetry witness finds the breaking transposition") {
    // f = x_{1,1} alone is not column-symmetric; swapping columns 1,2 shows it
    const Polynomial f = make_polynomial(1, 2, {term(1, 2, Rational(1), {{{0, 0, 1}}})});
    const auto w = asymmetry_witness(f);
    REQUIRE(w.has_value());
    CHECK(*w == 0);
    CHECK(!is_column_symmetric(f));
    CHECK_THROWS_AS(decompose(f), std::invalid_argument);
}

TEST_CASE("decompose: single basis element round trip") {
    for (int n : {2, 3})
        for (const auto& t : enumerate_rank_tuples(2, 3)) {
            if (t.rank() > n) continue;
            const Polynomial f = expand_monomial_sym(t, n);
            const Decomposition dec = decompose(f);
            CHECK(dec.constant == Rational(0));
            REQUIRE(dec.components.size() == 1);
            CHECK(dec.components[0].first == Rational(1));
            CHECK(dec.components[0].second == t);
            CHECK(same_terms(recompose(dec, f.d, f.n), f));
        }
}

TEST_CASE("decompose: power sum in one row variable") {
    // x_{1,1}^2 + x_{1,2}^2 = m_{(2)} for d=1, n=2
    const Polynomial f = make_polynomial(
        1, 2, {term(1, 2, Rational(1), {{{0, 0, 2}}}), term(1, 2, Rational(1), {{{0, 1, 2}}})});
    const Decomposition dec = decompose(f);
    CHECK(dec.constant == Rational(0));
    REQUIRE(dec.components.size() == 1);
    CHECK(dec.components[0].first == Rational(1));
    CHECK(dec.components[0].second == canonical_tuple({MultiIndex{{2}}}));
}

TEST_CASE("decompose: mixed polynomial with constant term") {
    // 3 + 2*m_{(1),(1)} + m_{(2)} over d=1, n=3, entered term by term
    std::vector<Term> terms;
    terms.push_back(term(1, 3, Rational(3), {}));
    for (int j = 0; j < 3; ++j) terms.push_back(term(1, 3, Rational(1), {{{0, j, 2}}}));
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (const auto& p : pairs)
        terms.push_back(term(1, 3, Rational(4), {{{0, p[0], 1}}, {{0, p[1], 1}}}));
    const Polynomial f = make_polynomial(1, 3, std::move(terms));

    const Decomposition dec = decompose(f);
    CHECK(dec.constant == Rational(3));
    REQUIRE(dec.components.size() == 2);
    // canonical order lists rank-1 before rank-2
    CHECK(dec.components[0].second == canonical_tuple({MultiIndex{{2}}}));
    CHECK(dec.components[0].first == Rational(1));
    CHECK(dec.components[1].second == canonical_tuple({MultiIndex{{1}}, MultiIndex{{1}}}));
    CHECK(dec.components[1].first == Rational(2));
    CHECK(same_terms(recompose(dec, 1, 3), f));
}

TEST_CASE("decompose round trip on random symmetric polynomials") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 7ULL, 11ULL}) {
        const Polynomial f = random_symmetric_polynomial(2, 3, 3, seed);
        REQUIRE(!f.terms.empty());
        CHECK(is_column_symmetric(f));
        const Decomposition dec = decompose(f);
        CHECK(same_terms(recompose(dec, f.d, f.n), f));
        for (const auto& [c, t] : dec.components) {
            CHECK(c.num > 0);
            CHECK(t.rank() <= f.n);
        }
    }
}

TEST_CASE("random symmetric polynomial is normalized to one at the ones matrix") {
    for (std::uint64_t seed : {5ULL, 17ULL, 23ULL}) {
        const Polynomial f = random_symmetric_polynomial(2, 4, 3, seed);
        CHECK(sum_coefficients(f) == Rational(1));
        CHECK(normalize_check(f) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(f.degree() == 3);
    }
}

TEST_CASE("normalize_check rejects nonpositive coefficients") {
    const Polynomial bad =
        make_polynomial(1, 2, {term(1, 2, Rational(-1), {{{0, 0, 1}}}),
                               term(1, 2, Rational(-1), {{{0, 1, 1}}})});
    CHECK_THROWS_AS(normalize_check(bad), std::invalid_argument);
}

TEST_CASE("permute_columns relabels and canonicalizes") {
    const Polynomial f = make_polynomial(
        1, 3, {term(1, 3, Rational(1), {{{0, 0, 2}}}), term(1, 3, Rational(2), {{{0, 1, 1}}})});
    const Polynomial g = permute_columns(f, {2, 0, 1});
    SplitMix64 rng(34);
    const Matrix x = random_input(1, 3, rng);
    // g reads its column j from f's column perm[j], so g(x) = f(y) with
    // y[m] = x[perm^{-1}(m)]
    Matrix px(1, 3);
    px.at(0, 0) = x.at(0, 1);
    px.at(0, 1) = x.at(0, 2);
    px.at(0, 2) = x.at(0, 0);
    CHECK(eval_polynomial(g, x) == doctest::Approx(eval_polynomial(f, px)).epsilon(1e-14));
}

TEST_CASE("leading terms strictly decrease along the canonical term order") {
    const Polynomial f = random_symmetric_polynomial(2, 3, 3, 99);
    for (size_t i = 0; i + 1 < f.terms.size(); ++i)
        CHECK(f.terms[i + 1].exponents < f.terms[i].exponents);
}

TEST_CASE("text format round trip") {
    const Polynomial f = random_symmetric_polynomial(2, 3, 3, 42);
    const std::string text = polynomial_to_text(f);
    const Polynomial back = polynomial_from_text(text, 2, 3);
    CHECK(same_terms(back, f));
}

TEST_CASE("text parser accepts comments, fractions, decimals, and constants") {
    const std::string text =
        "# a comment line\n"
        "\n"
        "1/2 * x[1][1] * x[1][2]\n"
        "0.25 * x[2][3]^2\n"
        "3\n";
    const Polynomial f = polynomial_from_text(text, 2, 3);
    REQUIRE(f.terms.size() == 3);
    Matrix x(2, 3, 1.0);
    CHECK(eval_polynomial(f, x) == doctest::Approx(0.5 + 0.25 + 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(polynomial_from_text("1 * y[1][1]", 2, 3), std::invalid_argument);
    CHECK_THROWS_AS(polynomial_from_text("1 * x[3][1]", 2, 3), std::invalid_argument);
}

TEST_CASE("eval_polynomial spot check") {
    // 2*x11^2*x22 + 1/2 over a 2x2 matrix
    const Polynomial f = make_polynomial(
        2, 2,
        {term(2, 2, Rational(2), {{{0, 0, 2}}, {{1, 1, 1}}}), term(2, 2, Rational(1, 2), {})});
    Matrix x(2, 2);
    x.at(0, 0) = 0.5;
    x.at(1, 1) = 0.25;
    CHECK(eval_polynomial(f, x) == doctest::Approx(2 * 0.25 * 0.25 + 0.5).epsilon(1e-15));
}
