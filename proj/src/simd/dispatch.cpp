#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "nusample/simd.hpp"

namespace nusample::simd {

#if defined(NUSAMPLE_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif

namespace {

bool probe_avx2() {
#if defined(NUSAMPLE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

bool cpu_has_avx2() {
    static const bool has = probe_avx2();
    return has;
}

Isa initial_isa() {
    if (const char* env = std::getenv("NUSAMPLE_ISA")) {
        const std::string v(env);
        if (v == "scalar") return Isa::scalar;
        if (v == "avx2" && cpu_has_avx2()) return Isa::avx2;
    }
    return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& selected() {
    static std::atomic<Isa> isa{initial_isa()};
    return isa;
}

const KernelTable& lookup(Isa isa);

std::atomic<const KernelTable*>& selected_table() {
    static std::atomic<const KernelTable*> table{&lookup(selected().load())};
    return table;
}

const KernelTable& lookup(Isa isa) {
    if (isa == Isa::scalar) return scalar_kernels();
#if defined(NUSAMPLE_HAVE_AVX2)
    if (cpu_has_avx2()) return avx2_kernels();
#endif
    throw std::invalid_argument("simd: AVX2 kernels unavailable on this machine");
}

}  // namespace

bool isa_available(Isa isa) {
    return isa == Isa::scalar || cpu_has_avx2();
}

const KernelTable& kernels_for(Isa isa) {
    return lookup(isa);
}

const KernelTable& kernels() {
    return *selected_table().load(std::memory_order_relaxed);
}

Isa active_isa() {
    return selected().load(std::memory_order_relaxed);
}

void force_isa(Isa isa) {
    if (!isa_available(isa)) throw std::invalid_argument("simd: requested ISA unavailable");
    selected().store(isa, std::memory_order_relaxed);
    selected_table().store(&lookup(isa), std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) {
    return isa == Isa::avx2 ? "avx2" : "scalar";
}

}  // namespace nusample::simd
