#include "polyformer/matrix.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace polyformer {

namespace kernels {
void matmul_dispatch(const double* a, const double* b, double* c, int m, int k, int n);
void relu_dispatch(const double* x, double* y, size_t n);
}  // namespace kernels

Matrix::Matrix(int r, int c, double fill) : rows(r), cols(c) {
    if (r < 0 || c < 0) throw std::invalid_argument("matrix dimensions must be nonnegative");
    values.assign(static_cast<size_t>(r) * c, fill);
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

Matrix Matrix::zeros(int r, int c) { return Matrix(r, c); }

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows == b.rows && a.cols == b.cols && a.values == b.values;
}

void check_finite(const Matrix& m, const char* where) {
    for (double v : m.values)
        if (!std::isfinite(v))
            throw std::domain_error(std::string("non-finite value in ") + where);
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows)
        throw std::invalid_argument("matmul: inner dimensions " + std::to_string(a.cols) +
                                    " and " + std::to_string(b.rows) + " do not match");
    Matrix c(a.rows, b.cols);
    if (a.rows == 0 || b.cols == 0 || a.cols == 0) return c;
    kernels::matmul_dispatch(a.values.data(), b.values.data(), c.values.data(), a.rows, a.cols,
                             b.cols);
    check_finite(c, "matmul result");
    return c;
}

Matrix relu(const Matrix& m) {
    Matrix out(m.rows, m.cols);
    if (!m.values.empty())
        kernels::relu_dispatch(m.values.data(), out.values.data(), m.values.size());
    return out;
}

Vector relu(const Vector& v) {
    Vector out(v.size());
    if (!v.empty()) kernels::relu_dispatch(v.data(), out.data(), v.size());
    return out;
}

Matrix softmax_columns(const Matrix& a) {
    if (a.rows != a.cols) throw std::invalid_argument("softmax_columns: matrix must be square");
    Matrix out(a.rows, a.cols);
    for (int j = 0; j < a.cols; ++j) {
        // negated exponents: the smallest entry dominates, so shift by the
        // column minimum before exponentiating
        double lo = std::numeric_limits<double>::infinity();
        for (int i = 0; i < a.rows; ++i) lo = std::min(lo, a.at(i, j));
        double sum = 0.0;
        for (int i = 0; i < a.rows; ++i) {
            const double e = std::exp(-(a.at(i, j) - lo));
            out.at(i, j) = e;
            sum += e;
        }
        for (int i = 0; i < a.rows; ++i) out.at(i, j) /= sum;
    }
    check_finite(out, "softmax_columns result");
    return out;
}

Matrix transpose(const Matrix& m) {
    Matrix out(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) out.at(j, i) = m.at(i, j);
    return out;
}

Matrix add(const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("add: shape mismatch");
    Matrix out(a.rows, a.cols);
    for (size_t i = 0; i < a.values.size(); ++i) out.values[i] = a.values[i] + b.values[i];
    check_finite(out, "add result");
    return out;
}

Matrix add_col_broadcast(const Matrix& m, const Vector& v) {
    if (static_cast<int>(v.size()) != m.rows)
        throw std::invalid_argument("add_col_broadcast: vector length must equal row count");
    Matrix out = m;
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) out.at(i, j) += v[i];
    check_finite(out, "add_col_broadcast result");
    return out;
}

Matrix scale(const Matrix& m, double c) {
    Matrix out = m;
    for (double& v : out.values) v *= c;
    check_finite(out, "scale result");
    return out;
}

}  // namespace polyformer
