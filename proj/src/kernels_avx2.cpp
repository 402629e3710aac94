// AVX2 variants of the dense kernels. Compiled with -mavx2 in this one
// translation unit; callers reach them through the runtime dispatch in
// kernels.cpp. The loops mirror matmul_scalar exactly — same k-ascending
// accumulation per output element, same zero-row skip, separate mul+add
// (no FMA) — so the results are bitwise identical to the scalar kernel.
#include <immintrin.h>

#include <cstddef>

namespace polyformer {
namespace kernels {

void matmul_avx2(const double* a, const double* b, double* c, int m, int k, int n) {
    const int n4 = n & ~3;
    for (int i = 0; i < m; ++i) {
        double* ci = c + static_cast<size_t>(i) * n;
        int j = 0;
        for (; j < n4; j += 4) _mm256_storeu_pd(ci + j, _mm256_setzero_pd());
        for (; j < n; ++j) ci[j] = 0.0;
        const double* ai = a + static_cast<size_t>(i) * k;
        for (int p = 0; p < k; ++p) {
            const double aip = ai[p];
            if (aip == 0.0) continue;
            const double* bp = b + static_cast<size_t>(p) * n;
            const __m256d va = _mm256_set1_pd(aip);
            j = 0;
            for (; j < n4; j += 4) {
                __m256d acc = _mm256_loadu_pd(ci + j);
                __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(bp + j));
                _mm256_storeu_pd(ci + j, _mm256_add_pd(acc, prod));
            }
            for (; j < n; ++j) ci[j] += aip * bp[j];
        }
    }
}

void relu_avx2(const double* x, double* y, size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_max_pd(_mm256_loadu_pd(x + i), zero));
    for (; i < n; ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
}

}  // namespace kernels
}  // namespace polyformer
