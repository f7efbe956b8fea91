#include "ioncav/params.hpp"

#include <algorithm>

namespace ioncav {

void SystemParams::validate() const {
    if (n_ions < 1) throw ParamError("n_ions must be >= 1");
    if (mass <= 0.0) throw ParamError("mass must be > 0");
    if (charge <= 0.0) throw ParamError("charge must be > 0");
    if (omega_a <= 0.0) throw ParamError("omega_a must be > 0");
    if (omega_t <= 0.0) throw ParamError("omega_t must be > 0");
    if (kappa <= 0.0) throw ParamError("kappa must be > 0");
    if (g0 < 0.0) throw ParamError("g0 must be >= 0");
    if (gamma < 0.0) throw ParamError("gamma must be >= 0");
    if (wavenumber <= 0.0) throw ParamError("wavenumber must be > 0");
    if (sigma <= 0.0) throw ParamError("sigma must be > 0");
    if (eta < 0.0) throw ParamError("eta must be >= 0 by convention");
    if (gamma_m < 0.0) throw ParamError("Gamma_n must be >= 0");
    if (bath_temperature < 0.0) throw ParamError("bath temperature must be >= 0");
    if (bath_occupation && *bath_occupation < 0.0)
        throw ParamError("bath occupation must be >= 0");
}

NaturalParams to_natural(const SystemParams& sp) {
    sp.validate();
    const double ell = sp.length_unit();
    const double wa = sp.omega_a;
    NaturalParams p;
    p.n = sp.n_ions;
    p.at = sp.omega_t / wa;
    p.g0 = sp.g0 / wa;
    p.kappa = sp.kappa / wa;
    p.gamma = sp.gamma / wa;
    p.delta0 = sp.delta0 / wa;
    p.delta_c = sp.delta_c / wa;
    p.eta = sp.eta / wa;
    p.k = sp.wavenumber * ell;
    p.sigma = sp.sigma / ell;
    p.y0 = sp.y0 / ell;
    p.eps = constants::hbar / (sp.mass * wa * ell * ell);
    p.gamma_m = sp.gamma_m / wa;
    p.temp_ratio = sp.bath_temperature > 0.0
                       ? constants::hbar * wa / (constants::boltzmann * sp.bath_temperature)
                       : 0.0;
    p.bath_occupation = sp.bath_occupation;
    return p;
}

double dispersive_margin(const NaturalParams& p, double nbar) {
    const double competing = std::max({p.gamma, p.kappa, std::abs(p.delta_c),
                                       p.g0 * std::sqrt(std::max(nbar, 0.0))});
    if (competing <= 0.0) return std::numeric_limits<double>::infinity();
    return std::abs(p.delta0) / (10.0 * competing);
}

} // namespace ioncav
