#pragma once

#include <vector>

#include <Eigen/Core>

#include "ioncav/langevin.hpp"

namespace ioncav {

/// Closed-form inelastic output spectrum S(nu) in units 1/omega_a (the
/// Rayleigh line is not included). Runs on the selected kernel set.
Eigen::VectorXd output_spectrum_analytic(const GaussianSteadyState& sys,
                                         const Eigen::VectorXd& nu);

/// Same spectrum from the frequency-domain transfer functions of the complex
/// mode-basis Langevin system: an independent route used to cross-check the
/// closed form. Throws NoSteadyStateError when the drift is not Hurwitz.
Eigen::VectorXd output_spectrum_numeric(const GaussianSteadyState& sys,
                                        const Eigen::VectorXd& nu);

struct FanoHit {
    int mode = -1;
    double side = 0.0;      // +1 / -1 frequency branch
    double peak_nu = 0.0;
    double peak_value = 0.0;
    double hwhm = 0.0;
    double dip_nu = 0.0;
    double dip_depth = 0.0;  // 1 - S_dip/S_peak
};

struct FanoScan {
    bool found = false;
    std::vector<FanoHit> hits;
};

/// Peak-dip detector: a mode shows a Fano signature when an interior local
/// minimum with depth >= 5% of the local peak lies within 3 half-widths of
/// the peak nearest the mode frequency. Modes with |c_n| below 5% of the
/// strongest coupling are skipped.
FanoScan fano_signature(const GaussianSteadyState& sys, const Eigen::VectorXd& nu,
                        const Eigen::VectorXd& s);

} // namespace ioncav
