#ifndef POLYFORMER_VERIFY_HPP
#define POLYFORMER_VERIFY_HPP

#include "polyformer/builder.hpp"
#include "polyformer/polynomial.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace polyformer {

// Deterministic sample set over [0,1]^{d x n}. The measured maxima are lower
// bounds of the true sup, so strict upper-bound comparisons stay valid.
struct Sampler {
    int d = 0;
    int n = 0;
    std::uint64_t seed = 0;
    std::vector<Matrix> points;
};

// Corners (all-zeros, all-ones, where monomial values are extremal), a coarse
// {0, 1/2, 1} grid when d*n <= 6, and `count` uniform-random matrices.
Sampler make_default_sampler(int d, int n, std::uint64_t seed, int count = 2000);

struct ErrorStats {
    double max_abs_error = 0.0;
    Matrix argmax_point;
    long long sample_count = 0;
};

// One audited inequality. Kinds:
//   strict  measured < bound * (1 + 1e-9)   (error bounds; guard absorbs the
//                                            last-digit fp noise of the bound)
//   exact   measured <= bound               (bound is an absolute tolerance)
//   size    measured <= bound               (integer width/depth/param audit)
struct ClaimRecord {
    std::string id;
    enum class Kind { strict, exact, size } kind = Kind::strict;
    double measured = 0.0;
    double bound = 0.0;
    bool pass = false;
};

struct BoundReport {
    BuildBudget budget;
    SizeReport actual;
    std::vector<ClaimRecord> claims;

    bool all_pass() const;
};

ClaimRecord make_claim(std::string id, ClaimRecord::Kind kind, double measured, double bound);

// Max |f(X) - readout| over the sampler, evaluating the network on the padded
// state (inputs top-left, zeros elsewhere).
ErrorStats measure_error(const TransformerNetwork& net, const ReadOut& readout,
                         const Polynomial& f, const Sampler& s);

// Max |state(row of t, last column) - m_t(X)| over the sampler; works on any
// network using the shared row layout (rank-1 bank + summation, recursion, or
// the full pipeline).
ErrorStats measure_tuple_row_error(const TransformerNetwork& net, const RowMap& rows,
                                   const RankTuple& t, const Sampler& s);

// Per-column bank check: feeds each sampler point's column 0 to the plain
// bank network and compares the row of p against x^p. The sampler's n is
// ignored (only column 0 is read).
ErrorStats measure_bank_row_error(const FfnNetwork& net, const RowMap& rows,
                                  const MultiIndex& p, const Sampler& s);

// Builds the full pipeline for f and audits every bound it is sold under:
// per-monomial rank-1 errors, per-tuple errors, the end-to-end error, readout
// invariance under column permutations, and the width/depth size formulas.
BoundReport check_bounds(const Polynomial& f, const BuildBudget& b, const Sampler& s);
// Same audit against an already-assembled (possibly perturbed) build.
BoundReport check_bounds(const BuildResult& built, const Polynomial& f, const Sampler& s);

// Multiplies the first nonzero feed-forward weight of the first block by
// `factor` (harness sensitivity self-test: a 1% fault must trip a claim).
void apply_fault(TransformerNetwork& net, double factor);

// One CSV row per (N, L) pair: end-to-end measured error, its bound, and the
// size report of the build. Deterministic given the sampler.
std::string sweep(const Polynomial& f, const BuildBudget& base, const std::vector<int>& n_values,
                  const std::vector<int>& l_values, const Sampler& s);

// Parameter count of the shared-weight construction's naive flat-FNN
// counterpart: n unshared per-column banks plus one dense pooling layer over
// their concatenated outputs (n * bank_params + B * (n * B) + B with B the
// bank vector size). Grows with n, unlike the transformer's count.
long long flat_ffn_equivalent_count(const BuildBudget& b);

// Fixed-format text rendering (17 significant digits; byte-identical across
// runs with the same seed).
std::string report_to_text(const BoundReport& r);

}  // namespace polyformer

#endif
