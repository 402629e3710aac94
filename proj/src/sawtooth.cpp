#include "polyformer/sawtooth.hpp"

#include <cmath>
#include <stdexcept>

namespace polyformer {

int GadgetBudget::k() const {
    if (N < 2) throw std::invalid_argument("GadgetBudget: N must be >= 2");
    if (L < 1) throw std::invalid_argument("GadgetBudget: L must be >= 1");
    int kk = 0;
    while ((1 << (kk + 1)) <= N) ++kk;
    return kk;
}

int GadgetBudget::rounds() const { return L * k(); }

namespace {

double tent(double x) { return x < 0.5 ? 2.0 * x : 2.0 - 2.0 * x; }

}  // namespace

double sawtooth_exact(int i, double x) {
    if (i < 1) throw std::invalid_argument("sawtooth_exact: i must be >= 1");
    double y = x;
    for (int step = 0; step < i; ++step) y = tent(y);
    return y;
}

double sawtooth_closed_form(int i, double x) {
    if (i < 1) throw std::invalid_argument("sawtooth_closed_form: i must be >= 1");
    // T_i restricted to [j/2^{i-1}, (j+1)/2^{i-1}] is a copy of the unit tent.
    const double scale = std::ldexp(1.0, i - 1);
    double j = std::floor(x * scale);
    if (j > scale - 1.0) j = scale - 1.0;
    if (j < 0.0) j = 0.0;
    return tent(x * scale - j);
}

double square_ref(int K, double x) {
    double acc = x;
    for (int i = 1; i <= K; ++i)
        acc -= std::ldexp(sawtooth_closed_form(i, x), -2 * i);
    return acc;
}

std::vector<std::vector<double>> sawtooth_unit_coefficients(int k) {
    if (k < 1) throw std::invalid_argument("sawtooth_unit_coefficients: k must be >= 1");
    const int units = 1 << k;
    std::vector<std::vector<double>> coeff(static_cast<size_t>(k),
                                           std::vector<double>(static_cast<size_t>(units), 0.0));
    for (int i = 1; i <= k; ++i) {
        auto& row = coeff[static_cast<size_t>(i - 1)];
        // Slope starts at 2^i and flips sign at every multiple of 1/2^i, so the
        // ReLU-basis coefficients are 2^i at u_0 and alternating +-2^{i+1} at
        // the flip positions m' * 2^{k-i}.
        row[0] = std::ldexp(1.0, i);
        for (int mp = 1; mp < (1 << i); ++mp) {
            const double c = std::ldexp(1.0, i + 1);
            row[static_cast<size_t>(mp << (k - i))] = (mp % 2 == 1) ? -c : c;
        }
    }
    return coeff;
}

double accumulator_drop_weight(int k, int round, int m) {
    const auto coeff = sawtooth_unit_coefficients(k);
    double w = 0.0;
    for (int i = 1; i <= k; ++i)
        w += std::ldexp(coeff[static_cast<size_t>(i - 1)][static_cast<size_t>(m)],
                        -2 * ((round - 1) * k + i));
    return w;
}

namespace {

// Shared assembly for the squaring-based gadgets: `routing` maps the network
// input to one scalar t-channel per row, each channel runs the L-round
// sawtooth refinement of t^2, and the output is sum_c out_weight[c] * a_L[c].
//
// Round state per channel: an accumulator unit ReLU(a_j) (a_j >= t^2 >= 0, so
// the ReLU is transparent) plus breakpoint units ReLU(t_j - m/2^k). Round 1
// has no separate accumulator unit because a_0 = t = ReLU(t - 0).
FfnNetwork assemble_square_stack(const GadgetBudget& budget, const Matrix& routing,
                                 const Vector& out_weight) {
    const int k = budget.k();
    const int L = budget.L;
    const int U = 1 << k;
    const int nch = routing.rows;
    const auto coeff = sawtooth_unit_coefficients(k);

    // Total subtraction applied to the accumulator when finishing round j
    // (1-based): a_j = a_{j-1} - sum_i T_i(t_{j-1}) / 4^{(j-1)k+i}.
    auto drop_weight = [&](int j, int m) { return accumulator_drop_weight(k, j, m); };

    FfnNetwork net;

    FfnLayer first;
    first.w = Matrix::zeros(nch * U, routing.cols);
    first.b = Vector(static_cast<size_t>(nch * U), 0.0);
    for (int c = 0; c < nch; ++c)
        for (int m = 0; m < U; ++m) {
            const int r = c * U + m;
            for (int v = 0; v < routing.cols; ++v) first.w.at(r, v) = routing.at(c, v);
            first.b[static_cast<size_t>(r)] = -std::ldexp(static_cast<double>(m), -k);
        }
    net.layers.push_back(std::move(first));

    for (int j = 1; j < L; ++j) {
        const int in_dim = (j == 1) ? nch * U : nch * (U + 1);
        FfnLayer mid;
        mid.w = Matrix::zeros(nch * (U + 1), in_dim);
        mid.b = Vector(static_cast<size_t>(nch * (U + 1)), 0.0);
        for (int c = 0; c < nch; ++c) {
            const int in_base = (j == 1) ? c * U : c * (U + 1);
            const int in_acc = in_base;                       // u_0 doubles as a_0 when j == 1
            const int in_unit = in_base + ((j == 1) ? 0 : 1);
            const int out_base = c * (U + 1);
            mid.w.at(out_base, in_acc) = 1.0;
            for (int m = 0; m < U; ++m)
                mid.w.at(out_base, in_unit + m) -= drop_weight(j, m);
            for (int m = 0; m < U; ++m) {
                const int r = out_base + 1 + m;
                for (int mp = 0; mp < U; ++mp)
                    mid.w.at(r, in_unit + mp) = coeff[static_cast<size_t>(k - 1)][static_cast<size_t>(mp)];
                mid.b[static_cast<size_t>(r)] = -std::ldexp(static_cast<double>(m), -k);
            }
        }
        net.layers.push_back(std::move(mid));
    }

    FfnLayer last;
    const int in_dim = (L == 1) ? nch * U : nch * (U + 1);
    last.w = Matrix::zeros(1, in_dim);
    last.b = Vector(1, 0.0);
    for (int c = 0; c < nch; ++c) {
        const int in_base = (L == 1) ? c * U : c * (U + 1);
        const int in_unit = in_base + ((L == 1) ? 0 : 1);
        const double s = out_weight[static_cast<size_t>(c)];
        last.w.at(0, in_base) += s;
        for (int m = 0; m < U; ++m)
            last.w.at(0, in_unit + m) -= s * drop_weight(L, m);
    }
    net.layers.push_back(std::move(last));
    return net;
}

}  // namespace

FfnNetwork build_square_ffn(const GadgetBudget& b) {
    Matrix routing = Matrix::zeros(1, 1);
    routing.at(0, 0) = 1.0;
    return assemble_square_stack(b, routing, Vector{1.0});
}

FfnNetwork build_product_ffn(const GadgetBudget& b) {
    // Polarization: xy = 2((x+y)/2)^2 - x^2/2 - y^2/2, applied to the
    // squaring approximant channel-wise.
    Matrix routing = Matrix::zeros(3, 2);
    routing.at(0, 0) = 0.5;
    routing.at(0, 1) = 0.5;
    routing.at(1, 0) = 1.0;
    routing.at(2, 1) = 1.0;
    return assemble_square_stack(b, routing, Vector{2.0, -0.5, -0.5});
}

FfnNetwork build_clamped_product_ffn(const GadgetBudget& b) {
    FfnNetwork relu_pass;
    FfnLayer in;
    in.w = Matrix::identity(1);
    in.b = Vector(1, 0.0);
    FfnLayer out = in;
    relu_pass.layers.push_back(std::move(in));
    relu_pass.layers.push_back(std::move(out));
    return compose_ffn(build_product_ffn(b), relu_pass);
}

}  // namespace polyformer
