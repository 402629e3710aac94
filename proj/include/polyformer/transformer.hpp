#ifndef POLYFORMER_TRANSFORMER_HPP
#define POLYFORMER_TRANSFORMER_HPP

#include "polyformer/ffn.hpp"
#include "polyformer/matrix.hpp"

#include <vector>

namespace polyformer {

// Single-head attention parameters. On a state matrix X (state_dim x n):
//   Attn(X) = X + w_o * (w_v X) * softmax_columns[(w_k X)^T (w_q X)]
// with the negated-exponent column softmax from matrix.hpp. w_o is
// state_dim x m; w_v, w_k, w_q are m x state_dim.
struct AttentionParams {
    Matrix w_o, w_v, w_k, w_q;
};

// Feed-forward half of a block:
//   FF(X) = X + w2 * relu(w1 X + b1 * 1^T) + b2 * 1^T
struct FeedForwardParams {
    Matrix w1;  // r x state_dim
    Vector b1;  // r
    Matrix w2;  // state_dim x r
    Vector b2;  // state_dim
};

struct TransformerBlock {
    AttentionParams attn;
    FeedForwardParams ff;
};

// Depth counts blocks; width is the state dimension (every hidden stage in
// the constructions here is at most max(state_dim, ff hidden r, attn m),
// which size_report uses to stay honest).
struct TransformerNetwork {
    int state_dim = 0;
    std::vector<TransformerBlock> blocks;
};

Matrix eval_attention(const AttentionParams& p, const Matrix& x);
Matrix eval_ff_layer(const FeedForwardParams& p, const Matrix& x);
Matrix eval_block(const TransformerBlock& b, const Matrix& x);
Matrix eval_transformer(const TransformerNetwork& net, const Matrix& x);

SizeReport size_report(const TransformerNetwork& net);

// Attention params that make one block a row-sum collector: on a matrix with
// n+1 columns whose last column is zero, the block adds each row's sum to
// every column, so column n+1 ends up holding exactly the row sums.
// (w_v = (n+1) I, w_k = w_q = 0, w_o = I; zero logits give a uniform softmax.)
AttentionParams build_summation_attention(int d_state, int n);

// Attention that contributes exactly zero (w_o = 0), with inner dimension 1
// to keep the parameter count down.
AttentionParams inert_attention(int d_state);

// Realizes an FNN inside transformer blocks with inert attention. The state
// is doubled (2P rows, P = the largest layer dimension); the live copy of the
// data alternates halves, each block ReLU-copying the live half, computing
// the next hidden layer, and erasing the stale copy through the block's
// output map. Requires depth >= 1 and nonnegative input/output values on the
// intended domain (hidden values are nonnegative automatically). The final
// affine map is folded into the last block, so depth is preserved and the
// output appears in the top output_dim rows of the final state; all other
// rows return to zero.
TransformerNetwork embed_ffn_in_transformer(const FfnNetwork& f);

}  // namespace polyformer

#endif
