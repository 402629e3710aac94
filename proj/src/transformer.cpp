#include "polyformer/transformer.hpp"

#include <algorithm>
#include <stdexcept>

namespace polyformer {

Matrix eval_attention(const AttentionParams& p, const Matrix& x) {
    if (p.w_q.cols != x.rows)
        throw std::invalid_argument("eval_attention: state dim mismatch");
    Matrix logits = matmul(transpose(matmul(p.w_k, x)), matmul(p.w_q, x));
    Matrix s = softmax_columns(logits);
    return add(x, matmul(p.w_o, matmul(matmul(p.w_v, x), s)));
}

Matrix eval_ff_layer(const FeedForwardParams& p, const Matrix& x) {
    if (p.w1.cols != x.rows)
        throw std::invalid_argument("eval_ff_layer: state dim mismatch");
    Matrix hidden = relu(add_col_broadcast(matmul(p.w1, x), p.b1));
    return add_col_broadcast(add(x, matmul(p.w2, hidden)), p.b2);
}

Matrix eval_block(const TransformerBlock& b, const Matrix& x) {
    return eval_ff_layer(b.ff, eval_attention(b.attn, x));
}

Matrix eval_transformer(const TransformerNetwork& net, const Matrix& x) {
    if (x.rows != net.state_dim)
        throw std::invalid_argument("eval_transformer: input must have state_dim rows");
    check_finite(x, "transformer input");
    Matrix cur = x;
    for (const TransformerBlock& b : net.blocks) cur = eval_block(b, cur);
    return cur;
}

SizeReport size_report(const TransformerNetwork& net) {
    SizeReport r;
    r.width = net.state_dim;
    r.depth = static_cast<long long>(net.blocks.size());
    for (const TransformerBlock& b : net.blocks) {
        r.width = std::max<long long>(r.width, b.ff.w1.rows);   // ff hidden size
        r.width = std::max<long long>(r.width, b.attn.w_v.rows);  // attention inner dim
        r.parameter_count += static_cast<long long>(b.attn.w_o.values.size()) +
                             static_cast<long long>(b.attn.w_v.values.size()) +
                             static_cast<long long>(b.attn.w_k.values.size()) +
                             static_cast<long long>(b.attn.w_q.values.size()) +
                             static_cast<long long>(b.ff.w1.values.size()) +
                             static_cast<long long>(b.ff.b1.size()) +
                             static_cast<long long>(b.ff.w2.values.size()) +
                             static_cast<long long>(b.ff.b2.size());
    }
    return r;
}

AttentionParams build_summation_attention(int d_state, int n) {
    if (d_state < 1 || n < 1)
        throw std::invalid_argument("build_summation_attention: dims must be positive");
    AttentionParams p;
    p.w_o = Matrix::identity(d_state);
    p.w_v = scale(Matrix::identity(d_state), static_cast<double>(n + 1));
    p.w_k = Matrix::zeros(d_state, d_state);
    p.w_q = Matrix::zeros(d_state, d_state);
    return p;
}

AttentionParams inert_attention(int d_state) {
    AttentionParams p;
    p.w_o = Matrix::zeros(d_state, 1);
    p.w_v = Matrix::zeros(1, d_state);
    p.w_k = Matrix::zeros(1, d_state);
    p.w_q = Matrix::zeros(1, d_state);
    return p;
}

static FeedForwardParams inert_ff(int d_state) {
    FeedForwardParams ff;
    ff.w1 = Matrix::zeros(1, d_state);
    ff.b1.assign(1, 0.0);
    ff.w2 = Matrix::zeros(d_state, 1);
    ff.b2.assign(d_state, 0.0);
    return ff;
}

TransformerNetwork embed_ffn_in_transformer(const FfnNetwork& f) {
    const int n_layers = static_cast<int>(f.layers.size());
    if (n_layers < 2)
        throw std::invalid_argument("embed_ffn_in_transformer: network needs depth >= 1");
    int pmax = f.input_dim();
    for (const FfnLayer& l : f.layers) pmax = std::max(pmax, l.w.rows);
    const int P = pmax;
    const int D = 2 * P;

    TransformerNetwork tf;
    tf.state_dim = D;
    // Block j realizes hidden layer j. The live data x_{j-1} sits in the top
    // half when j-1 is even, in the bottom half otherwise. Hidden layout per
    // block: slots [0,P) = ReLU copy of the live half, slots [P,2P) = next
    // layer's ReLU stage. The output map erases the stale copy (-1 against
    // the ReLU copy, valid because values are nonnegative) and writes the new
    // one; the last block writes the final affine map's value into the top
    // rows instead.
    for (int j = 1; j <= n_layers - 1; ++j) {
        const FfnLayer& lay = f.layers[j - 1];
        const int din = lay.w.cols;
        const int dout = lay.w.rows;
        const int off_in = ((j - 1) % 2 == 0) ? 0 : P;
        const int off_new = P - off_in;
        const bool last = (j == n_layers - 1);

        FeedForwardParams ff;
        ff.w1 = Matrix::zeros(D, D);
        ff.b1.assign(D, 0.0);
        ff.w2 = Matrix::zeros(D, D);
        ff.b2.assign(D, 0.0);

        for (int i = 0; i < din; ++i) ff.w1.at(i, off_in + i) = 1.0;
        for (int u = 0; u < dout; ++u) {
            for (int v = 0; v < din; ++v) ff.w1.at(P + u, off_in + v) = lay.w.at(u, v);
            ff.b1[P + u] = lay.b[u];
        }

        for (int i = 0; i < din; ++i) ff.w2.at(off_in + i, i) = -1.0;
        if (!last) {
            for (int u = 0; u < dout; ++u) ff.w2.at(off_new + u, P + u) = 1.0;
        } else {
            const FfnLayer& fin = f.layers.back();
            for (int u = 0; u < fin.w.rows; ++u) {
                for (int v = 0; v < fin.w.cols; ++v) ff.w2.at(u, P + v) = fin.w.at(u, v);
                ff.b2[u] = fin.b[u];
            }
        }

        TransformerBlock blk;
        blk.attn = inert_attention(D);
        blk.ff = std::move(ff);
        tf.blocks.push_back(std::move(blk));
    }
    return tf;
}

}  // namespace polyformer
