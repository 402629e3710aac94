#include "polyformer/ffn.hpp"

#include <algorithm>
#include <stdexcept>

namespace polyformer {

int FfnNetwork::width() const {
    int w = 0;
    for (size_t i = 0; i + 1 < layers.size(); ++i)
        w = std::max(w, layers[i].w.rows);
    return w;
}

static void validate_ffn(const FfnNetwork& net) {
    if (net.layers.empty()) throw std::invalid_argument("ffn: needs at least one layer");
    for (size_t i = 0; i < net.layers.size(); ++i) {
        const FfnLayer& l = net.layers[i];
        if (static_cast<int>(l.b.size()) != l.w.rows)
            throw std::invalid_argument("ffn: bias length must equal weight row count");
        if (i > 0 && l.w.cols != net.layers[i - 1].w.rows)
            throw std::invalid_argument("ffn: layer " + std::to_string(i) +
                                        " input dim does not match previous output dim");
    }
}

Vector eval_ffn(const FfnNetwork& net, const Vector& x) {
    validate_ffn(net);
    if (static_cast<int>(x.size()) != net.input_dim())
        throw std::invalid_argument("eval_ffn: input length mismatch");
    Matrix cur(static_cast<int>(x.size()), 1);
    cur.values = x;
    for (size_t i = 0; i < net.layers.size(); ++i) {
        cur = add_col_broadcast(matmul(net.layers[i].w, cur), net.layers[i].b);
        if (i + 1 < net.layers.size()) cur = relu(cur);
    }
    return cur.values;
}

Matrix eval_ffn_columns(const FfnNetwork& net, const Matrix& x) {
    validate_ffn(net);
    if (x.rows != net.input_dim())
        throw std::invalid_argument("eval_ffn_columns: row count mismatch");
    Matrix cur = x;
    for (size_t i = 0; i < net.layers.size(); ++i) {
        cur = add_col_broadcast(matmul(net.layers[i].w, cur), net.layers[i].b);
        if (i + 1 < net.layers.size()) cur = relu(cur);
    }
    return cur;
}

FfnNetwork compose_ffn(const FfnNetwork& f, const FfnNetwork& g) {
    validate_ffn(f);
    validate_ffn(g);
    if (f.output_dim() != g.input_dim())
        throw std::invalid_argument("compose_ffn: f output dim != g input dim");
    FfnNetwork h;
    h.layers.assign(f.layers.begin(), f.layers.end() - 1);
    // fuse f's final affine into g's first: no ReLU sits between them
    const FfnLayer& fl = f.layers.back();
    const FfnLayer& g0 = g.layers.front();
    FfnLayer fused;
    fused.w = matmul(g0.w, fl.w);
    Matrix fb(static_cast<int>(fl.b.size()), 1);
    fb.values = fl.b;
    Matrix wb = matmul(g0.w, fb);
    fused.b = wb.values;
    for (size_t i = 0; i < fused.b.size(); ++i) fused.b[i] += g0.b[i];
    h.layers.push_back(std::move(fused));
    h.layers.insert(h.layers.end(), g.layers.begin() + 1, g.layers.end());
    return h;
}

static FfnLayer identity_layer(int d) {
    FfnLayer l;
    l.w = Matrix::identity(d);
    l.b.assign(d, 0.0);
    return l;
}

FfnNetwork parallel_ffn(const std::vector<FfnNetwork>& nets) {
    if (nets.empty()) throw std::invalid_argument("parallel_ffn: empty list");
    size_t max_layers = 0;
    for (const FfnNetwork& n : nets) {
        validate_ffn(n);
        max_layers = std::max(max_layers, n.layers.size());
    }
    // pad shallower nets at the back with identity layers (ReLU-transparent
    // for nonnegative outputs)
    std::vector<FfnNetwork> padded = nets;
    for (FfnNetwork& n : padded)
        while (n.layers.size() < max_layers) n.layers.push_back(identity_layer(n.output_dim()));

    FfnNetwork out;
    for (size_t li = 0; li < max_layers; ++li) {
        int rtot = 0, ctot = 0;
        for (const FfnNetwork& n : padded) {
            rtot += n.layers[li].w.rows;
            ctot += n.layers[li].w.cols;
        }
        FfnLayer l;
        l.w = Matrix(rtot, ctot);
        l.b.assign(rtot, 0.0);
        int r0 = 0, c0 = 0;
        for (const FfnNetwork& n : padded) {
            const FfnLayer& src = n.layers[li];
            for (int i = 0; i < src.w.rows; ++i) {
                for (int j = 0; j < src.w.cols; ++j) l.w.at(r0 + i, c0 + j) = src.w.at(i, j);
                l.b[r0 + i] = src.b[i];
            }
            r0 += src.w.rows;
            c0 += src.w.cols;
        }
        out.layers.push_back(std::move(l));
    }
    return out;
}

SizeReport size_report(const FfnNetwork& net) {
    SizeReport r;
    r.width = net.width();
    r.depth = net.depth();
    for (const FfnLayer& l : net.layers)
        r.parameter_count += static_cast<long long>(l.w.values.size()) +
                             static_cast<long long>(l.b.size());
    return r;
}

}  // namespace polyformer
