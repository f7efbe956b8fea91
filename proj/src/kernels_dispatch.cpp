#include "ioncav/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace ioncav::kernels {

namespace {

const KernelSet scalar_set{&scalar::coulomb_energy_gradient, &scalar::spectrum_grid,
                           "scalar"};

#if defined(IONCAV_HAVE_AVX2)
const KernelSet avx2_set{&avx2::coulomb_energy_gradient, &avx2::spectrum_grid, "avx2"};
#endif

std::atomic<const KernelSet*> g_active{nullptr};

const KernelSet* detect() {
#if defined(IONCAV_HAVE_AVX2)
    if (avx2_available()) return &avx2_set;
#endif
    return &scalar_set;
}

} // namespace

bool avx2_available() {
#if defined(IONCAV_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelSet& active() {
    const KernelSet* k = g_active.load(std::memory_order_acquire);
    if (!k) {
        k = detect();
        g_active.store(k, std::memory_order_release);
    }
    return *k;
}

void select(Isa isa) {
    switch (isa) {
        case Isa::Scalar:
            g_active.store(&scalar_set);
            break;
        case Isa::Avx2:
#if defined(IONCAV_HAVE_AVX2)
            if (avx2_available()) {
                g_active.store(&avx2_set);
                break;
            }
#endif
            throw std::runtime_error("avx2 kernels not available on this machine");
        case Isa::Auto:
            g_active.store(detect());
            break;
    }
}

} // namespace ioncav::kernels
