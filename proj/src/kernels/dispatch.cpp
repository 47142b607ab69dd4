#include "nopath/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string_view>

namespace nopath::kernels {

#ifndef NOPATH_HAVE_AVX2
const KernelTable* avx2_table() { return nullptr; }
#endif

bool cpu_has_avx2() {
#if defined(NOPATH_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

namespace {

Isa initial_isa() {
    if (const char* env = std::getenv("NOPATH_ISA"); env && std::string_view(env) == "scalar") {
        return Isa::Scalar;
    }
    return (cpu_has_avx2() && avx2_table()) ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{initial_isa()};
    return isa;
}

}  // namespace

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
    if (isa == Isa::Avx2 && !(cpu_has_avx2() && avx2_table())) isa = Isa::Scalar;
    current().store(isa, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

const KernelTable& active() {
    return active_isa() == Isa::Avx2 ? *avx2_table() : scalar_table();
}

}  // namespace nopath::kernels
