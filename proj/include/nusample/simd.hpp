#pragma once

// Dense double-precision kernels behind every hot loop in the library:
// k-NN distance scans, k-means assignment and the reconstruction network's
// forward/backward passes. Each kernel has a portable scalar reference and
// an AVX2+FMA variant; the variant is chosen once at runtime from CPUID and
// can be overridden with the NUSAMPLE_ISA environment variable
// ("scalar" or "avx2") or force_isa() in tests.

#include <cstddef>
#include <span>
#include <string_view>

namespace nusample::simd {

enum class Isa { scalar, avx2 };

struct KernelTable {
    double (*dot)(const double* a, const double* b, std::size_t n);
    double (*squared_distance)(const double* a, const double* b, std::size_t n);
    // y += alpha * x
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    // y = A x + bias, A row-major rows x cols; bias may be null.
    void (*gemv)(const double* a, std::size_t rows, std::size_t cols, const double* x,
                 const double* bias, double* y);
};

const KernelTable& scalar_kernels();

/// True when this binary carries the AVX2 variant and the CPU supports it.
bool isa_available(Isa isa);

/// Table for a specific ISA. Throws std::invalid_argument if unavailable.
const KernelTable& kernels_for(Isa isa);

/// The table selected for this process.
const KernelTable& kernels();

Isa active_isa();
void force_isa(Isa isa);
std::string_view isa_name(Isa isa);

inline double dot(std::span<const double> a, std::span<const double> b) {
    return kernels().dot(a.data(), b.data(), a.size());
}

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    return kernels().squared_distance(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    kernels().axpy(alpha, x.data(), y.data(), x.size());
}

}  // namespace nusample::simd
