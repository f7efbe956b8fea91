#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "ioncav/constants.hpp"

namespace ioncav {

struct ParamError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Trap, cavity, pump, species and bath parameters in SI units.
/// All frequencies are angular (rad/s); lengths in meters.
struct SystemParams {
    int n_ions = 0;
    double mass = 0.0;        // kg
    double charge = 0.0;      // C
    double omega_a = 0.0;     // axial trap, along the chain (y)
    double omega_t = 0.0;     // transverse trap, along the cavity axis (x)
    double g0 = 0.0;          // vacuum Rabi coupling
    double wavenumber = 0.0;  // cavity mode, rad/m
    double sigma = 0.0;       // mode waist along the chain, m
    double y0 = 0.0;          // mode-center offset along the chain, m
    double delta0 = 0.0;      // pump-atom detuning
    double delta_c = 0.0;     // pump-cavity detuning
    double kappa = 0.0;       // half cavity linewidth (field decay)
    double gamma = 0.0;       // atomic linewidth, validity check only
    double eta = 0.0;         // pump strength
    double gamma_m = 0.0;     // mechanical bath rate, uniform over modes
    double bath_temperature = 0.0;             // K; sets thermal occupations
    std::optional<double> bath_occupation;     // uniform N_n override

    void validate() const;

    // Characteristic length (q^2/(4 pi eps0 m omega_a^2))^(1/3).
    double length_unit() const {
        return std::cbrt(charge * charge * constants::coulomb_constant /
                         (mass * omega_a * omega_a));
    }
};

/// Internal nondimensional parameter set: time unit 1/omega_a, length unit
/// ell = (q^2/(4 pi eps0 m omega_a^2))^(1/3), energy unit m omega_a^2 ell^2.
/// `eps` is hbar in these units; it sets every quantum scale (zero-point
/// lengths, photon recoil, the arctan potential depth).
struct NaturalParams {
    int n = 0;
    double at = 0.0;       // omega_t / omega_a
    double g0 = 0.0;
    double kappa = 0.0;
    double gamma = 0.0;
    double delta0 = 0.0;
    double delta_c = 0.0;
    double eta = 0.0;
    double k = 0.0;        // wavenumber * ell
    double sigma = 0.0;
    double y0 = 0.0;
    double eps = 0.0;      // hbar / (m omega_a ell^2)
    double gamma_m = 1e-3; // uniform mode damping
    double temp_ratio = 0.0;               // hbar omega_a / (kB T); 0 = zero temperature
    std::optional<double> bath_occupation; // uniform N_n override

    double recoil() const { return 0.5 * eps * k * k; }      // omega_R / omega_a
    double eta0_sq() const { return kappa / (2.0 * recoil()); }
    double pump_power() const { return eta * eta / eta0_sq(); }

    /// Thermal occupation of a mode at (natural) frequency w.
    double occupation(double w) const {
        if (bath_occupation) return *bath_occupation;
        if (temp_ratio <= 0.0) return 0.0;
        return 1.0 / std::expm1(temp_ratio * w);
    }

    NaturalParams with_pump_power(double P) const {
        NaturalParams q = *this;
        q.eta = std::sqrt(P * eta0_sq());
        return q;
    }
};

NaturalParams to_natural(const SystemParams& sp);

/// |Delta0| >= 10 max(gamma, kappa, |Delta_c|, g0 sqrt(nbar)): dispersive-regime
/// check. Returns the margin |Delta0| / (10 max(...)); valid when >= 1.
double dispersive_margin(const NaturalParams& p, double nbar);

} // namespace ioncav
