#ifndef POLYFORMER_FFN_HPP
#define POLYFORMER_FFN_HPP

#include "polyformer/matrix.hpp"

#include <cstdint>
#include <vector>

namespace polyformer {

// One affine map y = w x + b.
struct FfnLayer {
    Matrix w;
    Vector b;
};

// Plain feed-forward ReLU network: alternating affine maps and ReLUs, with
// ReLU applied after every layer except the last. A network with M layers
// therefore has depth M-1 (the number of hidden/ReLU stages) and width equal
// to the largest hidden dimension; a single affine map has depth 0.
struct FfnNetwork {
    std::vector<FfnLayer> layers;

    int input_dim() const { return layers.front().w.cols; }
    int output_dim() const { return static_cast<int>(layers.back().w.rows); }
    int depth() const { return static_cast<int>(layers.size()) - 1; }
    int width() const;
};

struct SizeReport {
    long long width = 0;
    long long depth = 0;
    long long parameter_count = 0;
};

Vector eval_ffn(const FfnNetwork& net, const Vector& x);
// Apply the network to every column of x independently.
Matrix eval_ffn_columns(const FfnNetwork& net, const Matrix& x);

// compose_ffn(f, g)(x) == g(f(x)). The boundary affine maps are fused
// (w = wg0 * wfL, b = wg0 * bfL + bg0), so depth(h) = depth(f) + depth(g).
FfnNetwork compose_ffn(const FfnNetwork& f, const FfnNetwork& g);

// Block-diagonal stack: evaluates all nets on the concatenated input and
// concatenates the outputs. Shallower nets are padded at the back with
// identity layers, which is value-preserving only when their outputs are
// nonnegative (ReLU-transparent); the constructions here satisfy that.
FfnNetwork parallel_ffn(const std::vector<FfnNetwork>& nets);

SizeReport size_report(const FfnNetwork& net);

}  // namespace polyformer

#endif
