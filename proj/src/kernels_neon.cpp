// NEON variants, mirroring matmul_scalar's accumulation order (see
// kernels_avx2.cpp for the reasoning). Whole file is a no-op off aarch64.
#ifdef __aarch64__

#include <arm_neon.h>

#include <cstddef>

namespace polyformer {
namespace kernels {

void matmul_neon(const double* a, const double* b, double* c, int m, int k, int n) {
    const int n2 = n & ~1;
    for (int i = 0; i < m; ++i) {
        double* ci = c + static_cast<size_t>(i) * n;
        int j = 0;
        for (; j < n2; j += 2) vst1q_f64(ci + j, vdupq_n_f64(0.0));
        for (; j < n; ++j) ci[j] = 0.0;
        const double* ai = a + static_cast<size_t>(i) * k;
        for (int p = 0; p < k; ++p) {
            const double aip = ai[p];
            if (aip == 0.0) continue;
            const double* bp = b + static_cast<size_t>(p) * n;
            const float64x2_t va = vdupq_n_f64(aip);
            j = 0;
            for (; j < n2; j += 2) {
                float64x2_t acc = vld1q_f64(ci + j);
                float64x2_t prod = vmulq_f64(va, vld1q_f64(bp + j));
                vst1q_f64(ci + j, vaddq_f64(acc, prod));
            }
            for (; j < n; ++j) ci[j] += aip * bp[j];
        }
    }
}

void relu_neon(const double* x, double* y, size_t n) {
    const float64x2_t zero = vdupq_n_f64(0.0);
    size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vmaxq_f64(vld1q_f64(x + i), zero));
    for (; i < n; ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
}

}  // namespace kernels
}  // namespace polyformer

#endif  // __aarch64__
