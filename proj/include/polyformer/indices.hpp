#ifndef POLYFORMER_INDICES_HPP
#define POLYFORMER_INDICES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace polyformer {

// Exponent vector p in N^d for one column's monomial x^p.
struct MultiIndex {
    std::vector<int> e;

    int dims() const { return static_cast<int>(e.size()); }
    int degree() const;
    bool is_zero() const;

    bool operator==(const MultiIndex& o) const { return e == o.e; }
    bool operator!=(const MultiIndex& o) const { return !(*this == o); }
    // Plain lexicographic comparison of exponent vectors.
    bool operator<(const MultiIndex& o) const { return e < o.e; }
    bool operator>(const MultiIndex& o) const { return o < *this; }

    std::string to_string() const;  // e.g. "(2,0,1)"
};

// Basis index for column-symmetric polynomials: a tuple of nonzero
// multi-indices in non-increasing lexicographic order. The associated
// symmetrized monomial sums x^{p_1}_{j_1} ... x^{p_r}_{j_r} over ordered
// injective column choices (j_1, ..., j_r).
struct RankTuple {
    std::vector<MultiIndex> parts;

    int rank() const { return static_cast<int>(parts.size()); }
    int degree() const;

    bool operator==(const RankTuple& o) const { return parts == o.parts; }
    bool operator!=(const RankTuple& o) const { return !(*this == o); }
    // Canonical order, shared with enumerate_rank_tuples: rank, then total
    // degree, then part-wise comparison with larger leading parts first.
    bool operator<(const RankTuple& o) const;

    std::string to_string() const;  // e.g. "((2,0),(1,1))"
};

// Sorts parts into canonical non-increasing order; rejects zero parts.
RankTuple canonical_tuple(std::vector<MultiIndex> parts);

// Exact 64-bit arithmetic; throws std::overflow_error instead of wrapping.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_binomial(std::int64_t n, std::int64_t k);
std::int64_t checked_factorial(std::int64_t n);

// Number of d-part compositions of k into nonnegative integers: C(k+d-1, d-1).
std::int64_t count_compositions(std::int64_t d, std::int64_t k);

// P(n,r) = n! / (n-r)!; returns 0 for r > n (the degenerate-rank convention:
// no injective assignment of r tuple parts to n columns exists).
std::int64_t falling_factorial(std::int64_t n, std::int64_t r);

// All p with 1 <= |p| <= s, ordered by degree ascending, then lexicographic
// descending within a degree.
std::vector<MultiIndex> enumerate_multi_indices(int d, int s);

// All canonical tuples with rank >= 1 and total degree <= s, ordered by rank,
// then degree, then the part-wise order used by RankTuple::operator<.
std::vector<RankTuple> enumerate_rank_tuples(int d, int s);

// Number of ordered injective column assignments that realize the same
// monomial: the product of multiplicities! over distinct parts of t. Columns
// not covered by t (there are n - rank of them) carry exponent zero and do
// not contribute. Requires rank <= n.
std::int64_t symmetry_coefficient(const RankTuple& t, int n);

}  // namespace polyformer

#endif
