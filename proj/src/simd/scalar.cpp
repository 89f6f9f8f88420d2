#include "nusample/simd.hpp"

namespace nusample::simd {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double squared_distance_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void gemv_scalar(const double* a, std::size_t rows, std::size_t cols, const double* x,
                 const double* bias, double* y) {
    for (std::size_t r = 0; r < rows; ++r) {
        const double acc = dot_scalar(a + r * cols, x, cols);
        y[r] = bias ? acc + bias[r] : acc;
    }
}

}  // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{dot_scalar, squared_distance_scalar, axpy_scalar, gemv_scalar};
    return table;
}

}  // namespace nusample::simd
