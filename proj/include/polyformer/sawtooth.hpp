#ifndef POLYFORMER_SAWTOOTH_HPP
#define POLYFORMER_SAWTOOTH_HPP

#include "polyformer/ffn.hpp"

#include <vector>

namespace polyformer {

// Budget for the piecewise-linear gadgets. N >= 2 picks the sawtooth density
// k = floor(log2 N); L is the number of refinement rounds. The squaring
// gadget then uses K = L*k tent maps and approximates x^2 on [0,1] with
// one-sided error at most 4^{-(K+1)}.
struct GadgetBudget {
    int N = 2;
    int L = 1;

    int k() const;       // floor(log2 N), rejects N < 2
    int rounds() const;  // L*k
};

// Tent map iterates. T1 is the unit tent (2x up to 1/2, then 2(1-x));
// T_{i+1} = T_i o T1. sawtooth_exact evaluates by i-fold recursion;
// sawtooth_closed_form uses the per-segment formula
// T_i(x) = T1(2^{i-1}(x - j/2^{i-1})) on [j/2^{i-1}, (j+1)/2^{i-1}].
double sawtooth_exact(int i, double x);
double sawtooth_closed_form(int i, double x);

// Reference squaring approximant: x - sum_{i=1..K} T_i(x)/4^i, evaluated
// directly from the closed-form tents. On [j/2^K, (j+1)/2^K] its signed error
// against x^2 is exactly -(x - j/2^K)(x - (j+1)/2^K).
double square_ref(int K, double x);

// Coefficients for expressing the tent maps over shared ReLU breakpoints.
// With units u_m = ReLU(t - m/2^k) for m = 0..2^k-1, row i-1 of the result
// gives T_i(t) = sum_m coeff[i-1][m] * u_m for t in [0,1].
std::vector<std::vector<double>> sawtooth_unit_coefficients(int k);

// Weight of breakpoint unit m in the accumulator update of refinement round
// `round` (1-based): the squaring approximant subtracts T_i(t_{round-1})
// scaled by 4^{-((round-1)k + i)}, summed over i = 1..k and re-expressed over
// the shared units.
double accumulator_drop_weight(int k, int round, int m);

// FNN realizations (exact piecewise-linear functions, no approximation
// beyond the gadget itself):
//   build_square_ffn:  1 input, depth L, width <= 2N-1, computes square_ref(L*k, x)
//   build_product_ffn: 2 inputs, depth L, width <= 6N, computes the
//                      polarization combination 2*sq((x+y)/2) - sq(x)/2 - sq(y)/2,
//                      within N^{-L} of xy on [0,1]^2
//   build_clamped_product_ffn: depth L+1, appends a ReLU so the output also
//                      stays in [0,1] on [0,1]^2
FfnNetwork build_square_ffn(const GadgetBudget& b);
FfnNetwork build_product_ffn(const GadgetBudget& b);
FfnNetwork build_clamped_product_ffn(const GadgetBudget& b);

}  // namespace polyformer

#endif
