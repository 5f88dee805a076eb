#include <cstdlib>
#include <string_view>

#include "kerrpa/kernels.hpp"

namespace kerrpa::simd {

#if defined(KERRPA_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif

const KernelTable* avx2_kernels() noexcept {
#if defined(KERRPA_HAVE_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return supported ? &avx2_table() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& kernels() noexcept {
    static const KernelTable& chosen = [] () -> const KernelTable& {
        const char* forced = std::getenv("KERRPA_SIMD");
        if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_kernels();
        if (const auto* t = avx2_kernels()) return *t;
        return scalar_kernels();
    }();
    return chosen;
}

}  // namespace kerrpa::simd
