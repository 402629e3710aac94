#include "polyformer/matrix.hpp"

#include <cstdlib>
#include <stdexcept>

namespace polyformer {

namespace kernels {

// Reference kernel. ikj order with the j loop innermost; the SIMD variants
// vectorize over j only, which keeps the per-element accumulation order (k
// ascending) identical to this loop, hence bitwise-equal results.
void matmul_scalar(const double* a, const double* b, double* c, int m, int k, int n) {
    for (int i = 0; i < m; ++i) {
        double* ci = c + static_cast<size_t>(i) * n;
        for (int j = 0; j < n; ++j) ci[j] = 0.0;
        const double* ai = a + static_cast<size_t>(i) * k;
        for (int p = 0; p < k; ++p) {
            const double aip = ai[p];
            if (aip == 0.0) continue;  // constructed weights are sparse in practice
            const double* bp = b + static_cast<size_t>(p) * n;
            for (int j = 0; j < n; ++j) ci[j] += aip * bp[j];
        }
    }
}

void relu_scalar(const double* x, double* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
}

#ifdef POLYFORMER_HAVE_AVX2_TU
void matmul_avx2(const double* a, const double* b, double* c, int m, int k, int n);
void relu_avx2(const double* x, double* y, size_t n);
#endif
#ifdef __aarch64__
void matmul_neon(const double* a, const double* b, double* c, int m, int k, int n);
void relu_neon(const double* x, double* y, size_t n);
#endif

}  // namespace kernels

namespace {

KernelBackend detect_backend() {
    if (const char* f = std::getenv("POLYFORMER_FORCE_SCALAR"); f && f[0] == '1')
        return KernelBackend::scalar;
#ifdef POLYFORMER_HAVE_AVX2_TU
    if (__builtin_cpu_supports("avx2")) return KernelBackend::avx2;
#endif
#ifdef __aarch64__
    return KernelBackend::neon;
#endif
    return KernelBackend::scalar;
}

KernelBackend& backend_slot() {
    static KernelBackend b = detect_backend();
    return b;
}

}  // namespace

KernelBackend active_kernel_backend() { return backend_slot(); }

void force_kernel_backend(KernelBackend b) {
    for (KernelBackend avail : available_kernel_backends())
        if (avail == b) {
            backend_slot() = b;
            return;
        }
    throw std::invalid_argument("kernel backend not available on this machine");
}

void reset_kernel_backend() { backend_slot() = detect_backend(); }

const char* kernel_backend_name(KernelBackend b) {
    switch (b) {
        case KernelBackend::scalar: return "scalar";
        case KernelBackend::avx2: return "avx2";
        case KernelBackend::neon: return "neon";
    }
    return "?";
}

std::vector<KernelBackend> available_kernel_backends() {
    std::vector<KernelBackend> v{KernelBackend::scalar};
#ifdef POLYFORMER_HAVE_AVX2_TU
    if (__builtin_cpu_supports("avx2")) v.push_back(KernelBackend::avx2);
#endif
#ifdef __aarch64__
    v.push_back(KernelBackend::neon);
#endif
    return v;
}

namespace kernels {

void matmul_dispatch(const double* a, const double* b, double* c, int m, int k, int n) {
    switch (backend_slot()) {
#ifdef POLYFORMER_HAVE_AVX2_TU
        case KernelBackend::avx2: matmul_avx2(a, b, c, m, k, n); return;
#endif
#ifdef __aarch64__
        case KernelBackend::neon: matmul_neon(a, b, c, m, k, n); return;
#endif
        default: matmul_scalar(a, b, c, m, k, n); return;
    }
}

void relu_dispatch(const double* x, double* y, size_t n) {
    switch (backend_slot()) {
#ifdef POLYFORMER_HAVE_AVX2_TU
        case KernelBackend::avx2: relu_avx2(x, y, n); return;
#endif
#ifdef __aarch64__
        case KernelBackend::neon: relu_neon(x, y, n); return;
#endif
        default: relu_scalar(x, y, n); return;
    }
}

}  // namespace kernels

}  // namespace polyformer
