#ifndef POLYFORMER_POLYNOMIAL_HPP
#define POLYFORMER_POLYNOMIAL_HPP

#include "polyformer/indices.hpp"
#include "polyformer/matrix.hpp"
#include "polyformer/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polyformer {

// One monomial over the d x n variable grid. Exponents are stored flat in
// column-major order (entry (i,j) at j*d + i), so plain lexicographic
// comparison of the flat vector is the column-major term order used by the
// decomposition algorithm.
struct Term {
    Rational coeff;
    std::vector<int> exponents;

    int total_degree() const;
};

struct Polynomial {
    int d = 0;
    int n = 0;
    // Canonical form: distinct exponent vectors, no zero coefficients,
    // sorted with the lexicographically largest (leading) term first.
    std::vector<Term> terms;

    int degree() const;  // max total degree, 0 for the zero polynomial
    int& exponent(Term& t, int i, int j) const;
    int exponent(const Term& t, int i, int j) const;
};

// Builds the canonical form: merges duplicate exponent vectors, drops zero
// coefficients, sorts leading-first.
Polynomial make_polynomial(int d, int n, std::vector<Term> terms);

Polynomial add(const Polynomial& a, const Polynomial& b);
Polynomial scale(const Polynomial& f, const Rational& c);
Polynomial permute_columns(const Polynomial& f, const std::vector<int>& perm);

double eval_polynomial(const Polynomial& f, const Matrix& x);
Rational sum_coefficients(const Polynomial& f);  // exact value at the all-ones matrix

// Monomial column-symmetric polynomial m_t: sum over ordered tuples of
// distinct columns (j_1,...,j_r) of prod_i x_{j_i}^{p_i}; zero when r > n.
double eval_monomial_sym(const RankTuple& t, const Matrix& x);

// Same value via the full permutation sum (1/(n-r)!) sum_{sigma in S_n};
// factorially slow, kept as an independent oracle. Requires n <= 8.
double eval_monomial_sym_permsum(const RankTuple& t, const Matrix& x);

// Explicit term list of m_t; empty polynomial when r > n.
Polynomial expand_monomial_sym(const RankTuple& t, int n);

// Index j of the first adjacent transposition (columns j, j+1) under which f
// is not invariant, or nullopt if f is column-symmetric.
std::optional<int> asymmetry_witness(const Polynomial& f);
bool is_column_symmetric(const Polynomial& f);

// f = constant + sum_t c_t * m_t with exact rational coefficients, computed
// by leading-term elimination in the column-major term order. Components are
// returned in the canonical tuple order. Throws if f is not column-symmetric.
struct Decomposition {
    Rational constant;
    std::vector<std::pair<Rational, RankTuple>> components;
};
Decomposition decompose(const Polynomial& f);

// Rebuilds constant + sum c_t * m_t as a canonical polynomial (round-trip
// check against the decomposed input).
Polynomial recompose(const Decomposition& dec, int d, int n);

// LHS - RHS of the product identity
//   m_{p_1..p_r} * m_q = m_{p_1..p_r,q} + sum_i m_{p_1,..,p_i+q,..,p_r},
// all sides evaluated by eval_monomial_sym.
double lemma6_residual(const RankTuple& t, const MultiIndex& q, const Matrix& x);

// Requires every coefficient > 0; returns f at the all-ones matrix (the sup
// norm of f on the unit cube for positive coefficients).
double normalize_check(const Polynomial& f);

// Random column-symmetric test polynomial: a random subset of basis tuples
// (always including one of full degree s) with positive rational
// coefficients, scaled so the value at the all-ones matrix is exactly 1.
Polynomial random_symmetric_polynomial(int d, int n, int s, std::uint64_t seed);

// Text format, one term per line: "coeff * x[i][j]^e * ...", 1-based indices,
// coefficient an integer, a fraction "a/b", or a finite decimal. A line with
// just a coefficient is a constant term; blank lines and "#" comments are
// skipped.
std::string polynomial_to_text(const Polynomial& f);
Polynomial polynomial_from_text(const std::string& text, int d, int n);

}  // namespace polyformer

#endif
