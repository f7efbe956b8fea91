#include "ioncav/kernels.hpp"

#include <cmath>

namespace ioncav::kernels::scalar {

double coulomb_energy_gradient(const double* x, const double* y, std::size_t n,
                               double* gx, double* gy) {
    double energy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double ax = 0.0, ay = 0.0;
        const double xi = x[i], yi = y[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double dx = xi - x[j];
            const double dy = yi - y[j];
            const double r2 = dx * dx + dy * dy;
            const double inv_r = 1.0 / std::sqrt(r2);
            const double inv_r3 = inv_r / r2;
            if (j > i) energy += inv_r;
            ax += dx * inv_r3;
            ay += dy * inv_r3;
        }
        gx[i] -= ax;
        gy[i] -= ay;
    }
    return energy;
}

// Output spectrum of the linearized photon-phonon system, normalized to the
// carrier intensity 2 kappa |abar|^2. theta(nu) resums the mode response;
// the |1 + 4 Deff theta |a|^2 / D|^-2 factor carries the back-action
// interference responsible for Fano-like lineshapes.
void spectrum_grid(const SpectrumInputs& in, const double* nu, std::size_t n_nu,
                   double* s_out) {
    const double kap = in.kappa, deff = in.delta_eff, na = in.photons;
    for (std::size_t iv = 0; iv < n_nu; ++iv) {
        const double v = nu[iv];
        double th_re = 0.0, th_im = 0.0;  // theta(nu)
        double t2 = 0.0;                  // thermal sidebands
        for (std::size_t m = 0; m < in.n_modes; ++m) {
            const double w = in.omega[m], g = in.gamma[m], c2 = in.c2[m];
            const double dr = w * w + g * g - v * v;
            const double di = -2.0 * g * v;
            const double den = dr * dr + di * di;
            th_re += c2 * w * dr / den;
            th_im -= c2 * w * di / den;
            const double wm = w - v, wp = w + v;
            t2 += c2 * g * (in.nbar[m] / (g * g + wm * wm) +
                            (in.nbar[m] + 1.0) / (g * g + wp * wp));
        }
        // D = (kappa - i nu)^2 + Deff^2
        const double Dr = kap * kap - v * v + deff * deff;
        const double Di = -2.0 * kap * v;
        const double Dden = Dr * Dr + Di * Di;
        const double f = 4.0 * deff * na;
        const double w_re = f * (th_re * Dr + th_im * Di) / Dden;
        const double w_im = f * (th_im * Dr - th_re * Di) / Dden;
        const double one_w2 = (1.0 + w_re) * (1.0 + w_re) + w_im * w_im;
        const double vp = v + deff, vm = v - deff;
        const double s0 = 2.0 / ((kap * kap + vp * vp) * one_w2);
        const double t1 = 4.0 * kap * na * (th_re * th_re + th_im * th_im) /
                          (kap * kap + vm * vm);
        s_out[iv] = s0 * (t1 + t2);
    }
}

} // namespace ioncav::kernels::scalar
