#ifndef POLYFORMER_BUILDER_HPP
#define POLYFORMER_BUILDER_HPP

#include "polyformer/ffn.hpp"
#include "polyformer/indices.hpp"
#include "polyformer/polynomial.hpp"
#include "polyformer/sawtooth.hpp"
#include "polyformer/transformer.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace polyformer {

// Construction budget: d x n input matrices, target degree s, sawtooth
// density N (>= 2) and refinement depth L (>= 1).
struct BuildBudget {
    int d = 1;
    int n = 1;
    int s = 1;
    int N = 2;
    int L = 1;

    void validate() const;
    GadgetBudget gadget() const { return GadgetBudget{N, L}; }
};

// Fixed allocation of every tracked quantity to a state row. The same layout
// convention is shared by all builders so row indices of monomials and tuples
// agree across them:
//   [0, d)              raw inputs x_1..x_d
//   bank_begin ...      one row per monomial x^p, 2 <= |p| <= s
//   tuple_begin ...     one row per basis tuple of rank >= 2, degree <= s
//   readout_row         weighted-sum row (only when a readout is built)
//   scratch_begin ...   work area for in-flight product gadgets (6 rows each)
struct RowMap {
    int d = 0;
    int n = 0;
    int s = 0;
    std::vector<MultiIndex> bank;
    std::vector<RankTuple> tuples;
    int bank_begin = 0;
    int tuple_begin = 0;
    int readout_row = -1;
    int scratch_begin = 0;
    int scratch_rows = 0;
    int state_dim = 0;

    int row_of_input(int i) const;
    // Degree-1 monomials live on the input rows; higher degrees in the bank.
    int row_of_monomial(const MultiIndex& p) const;
    // Rank-1 tuples resolve to their monomial row.
    int row_of_tuple(const RankTuple& t) const;
};

// Designated output cell of the final state; the approximation of f(X) is
// state(row, col) + bias (the bias carries the constant term of f).
struct ReadOut {
    int row = -1;
    int col = -1;
    double bias = 0.0;
};

struct BuildResult {
    TransformerNetwork net;
    ReadOut readout;
    RowMap rows;
    BuildBudget budget;
};

// Per-column monomial approximator as a plain ReLU network over the
// (d + bank) vector: input has x in its top d entries and zeros below; output
// carries x^p approximations at the RowMap rows. Degree-j rows are within
// (j-1) N^{-L} of x^p on [0,1]^d; degree-1 rows are exact.
std::pair<FfnNetwork, RowMap> build_monomial_bank(const BuildBudget& b);

// Monomial bank as transformer blocks followed by one summation-attention
// block: column n+1 of the output carries m_p(X) = sum_j x_j^p approximations
// for every 1 <= |p| <= s, each within n (|p|-1) N^{-L}.
std::pair<TransformerNetwork, RowMap> build_rank1_network(const BuildBudget& b);

// The rank-recursion stages alone (ranks 2..s). The input state must carry
// rank-1 values at the RowMap monomial rows (this map's layout also reserves
// the tuple rows); each stage multiplies a rank-r parent by a rank-1 factor
// through a clamped product gadget and subtracts the lower-rank merge terms.
// Every finished tuple row is clamped into [0, P(n,r)] before reuse.
std::pair<TransformerNetwork, RowMap> build_rank_recursion(const BuildBudget& b);

// End-to-end: decomposes f over the symmetric basis, runs bank + summation +
// recursion, and folds the weighted readout into the final block. Requires f
// column-symmetric with positive coefficients and f(ones) <= 1, degree <= s.
BuildResult assemble_theorem1(const Polynomial& f, const BuildBudget& b);

// Pads a raw d x n input into the state_dim x (n+1) layout the networks
// expect (X top-left, zeros elsewhere).
Matrix embed_input(const Matrix& x, const RowMap& rows);
double read_out(const Matrix& final_state, const ReadOut& r);

// Size and error budgets the verification harness audits against.
long long bank_width_limit(const BuildBudget& b);   // 12 s d^s N
int bank_depth_limit(const BuildBudget& b);         // (s-1)(L+1)
long long rank1_width_limit(const BuildBudget& b);  // 12 s d^s N
int rank1_depth_limit(const BuildBudget& b);        // (s-1)(L+1) + 1
long long recursion_width_limit(const BuildBudget& b);  // 12 (2d)^s N
int recursion_depth_limit(const BuildBudget& b);        // (s-1)(L+2)
long long full_width_limit(const BuildBudget& b);   // 12 (2d)^s N
int full_depth_limit(const BuildBudget& b);         // 2 s L + 3 s
double rank1_error_bound(const BuildBudget& b, int degree);          // n (j-1) N^{-L}
double tuple_error_bound(const BuildBudget& b, const RankTuple& t);  // (P(n+r-1,r) prod(|p_i|+1) - n^r) N^{-L}
double end_to_end_error_bound(const BuildBudget& b, double f_at_ones);  // 8^s N^{-L} f(1)

}  // namespace polyformer

#endif
