#pragma once

#include <cstddef>
#include <string>

namespace ioncav::kernels {

/// Inputs for the closed-form output-spectrum evaluation on a frequency grid.
/// All quantities in natural units; arrays of length n_modes.
struct SpectrumInputs {
    const double* c2 = nullptr;     // squared couplings c_n^2
    const double* omega = nullptr;  // mode frequencies
    const double* gamma = nullptr;  // mode damping rates
    const double* nbar = nullptr;   // thermal occupations N_n
    std::size_t n_modes = 0;
    double kappa = 0.0;
    double delta_eff = 0.0;
    double photons = 0.0;           // |abar|^2
};

/// Adds the gradient of sum_{i<j} 1/r_ij (i.e. -sum_{j != i} (r_i - r_j)/r^3
/// per ion) into gx/gy and returns the pair energy.
using coulomb_fn = double (*)(const double* x, const double* y, std::size_t n,
                              double* gx, double* gy);

/// Evaluates the cavity output spectrum S(nu) on a grid.
using spectrum_fn = void (*)(const SpectrumInputs& in, const double* nu,
                             std::size_t n_nu, double* s_out);

struct KernelSet {
    coulomb_fn coulomb_energy_gradient;
    spectrum_fn spectrum_grid;
    const char* name;
};

enum class Isa { Scalar, Avx2, Auto };

/// Kernel set currently in effect (auto-detected on first use).
const KernelSet& active();

/// Force a specific implementation; throws if the ISA is unavailable.
void select(Isa isa);
bool avx2_available();

namespace scalar {
double coulomb_energy_gradient(const double* x, const double* y, std::size_t n,
                               double* gx, double* gy);
void spectrum_grid(const SpectrumInputs& in, const double* nu, std::size_t n_nu,
                   double* s_out);
} // namespace scalar

#if defined(IONCAV_HAVE_AVX2)
namespace avx2 {
double coulomb_energy_gradient(const double* x, const double* y, std::size_t n,
                               double* gx, double* gy);
void spectrum_grid(const SpectrumInputs& in, const double* nu, std::size_t n_nu,
                   double* s_out);
} // namespace avx2
#endif

} // namespace ioncav::kernels
