#ifndef POLYFORMER_MATRIX_HPP
#define POLYFORMER_MATRIX_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace polyformer {

using Vector = std::vector<double>;

// Dense row-major matrix of doubles. Small and deliberately boring: the
// networks built here are explicit weight tables, so clarity beats cleverness.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> values;  // row-major, rows*cols entries

    Matrix() = default;
    Matrix(int r, int c, double fill = 0.0);

    double& at(int r, int c) { return values[static_cast<size_t>(r) * cols + c]; }
    const double& at(int r, int c) const { return values[static_cast<size_t>(r) * cols + c]; }

    static Matrix identity(int n);
    static Matrix zeros(int r, int c);

    bool same_shape(const Matrix& o) const { return rows == o.rows && cols == o.cols; }
};

bool operator==(const Matrix& a, const Matrix& b);

// C = A * B. Throws std::invalid_argument on inner-dimension mismatch,
// std::domain_error if the result contains non-finite entries.
Matrix matmul(const Matrix& a, const Matrix& b);

// Elementwise max(x, 0).
Matrix relu(const Matrix& m);
Vector relu(const Vector& v);

// Column-wise softmax with negated exponents: out(i,j) = e^{-a(i,j)} / s_j,
// s_j = sum_i e^{-a(i,j)}. Requires a square matrix. Every column of the
// result sums to 1. Stabilized by subtracting the per-column minimum of a.
Matrix softmax_columns(const Matrix& a);

Matrix transpose(const Matrix& m);
Matrix add(const Matrix& a, const Matrix& b);
// m + v * ones(1, cols): broadcast a column vector across all columns.
Matrix add_col_broadcast(const Matrix& m, const Vector& v);
Matrix scale(const Matrix& m, double c);

// Throws std::domain_error naming `where` if any entry is NaN/Inf.
void check_finite(const Matrix& m, const char* where);

// ---- kernel backends ----------------------------------------------------
// The matmul/relu inner loops exist as a scalar reference and (where the
// hardware has them) AVX2/NEON variants. The SIMD variants keep the scalar
// accumulation order and use separate mul+add, so all backends produce
// bitwise-identical results; the equivalence test asserts exact equality.
enum class KernelBackend { scalar, avx2, neon };

KernelBackend active_kernel_backend();
void force_kernel_backend(KernelBackend b);   // for tests
void reset_kernel_backend();                  // back to auto-detected
const char* kernel_backend_name(KernelBackend b);
std::vector<KernelBackend> available_kernel_backends();

}  // namespace polyformer

#endif
