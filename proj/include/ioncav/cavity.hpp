#pragma once

#include <complex>

#include <Eigen/Core>

#include "ioncav/configuration.hpp"
#include "ioncav/params.hpp"

namespace ioncav {

/// Intracavity mean field for a frozen ion configuration.
struct MeanFieldState {
    double u0 = 0.0;              // dispersive shift of the cavity resonance
    double delta_eff = 0.0;       // delta_c - u0
    std::complex<double> abar{};  // eta / (kappa - i delta_eff)
    double nbar = 0.0;            // |abar|^2
    double i_out = 0.0;           // 2 kappa nbar (natural units)
    double dispersive_margin = 0.0;
};

/// Dispersive shift (g0^2/Delta0) sum_j cos^2(k x_j) exp(-(y_j-y0)^2/sigma^2).
/// Throws ParamError when Delta0 == 0.
double u0_shift(const NaturalParams& p, const Eigen::VectorXd& x,
                const Eigen::VectorXd& y);
double u0_shift(const NaturalParams& p, const IonConfiguration& c);

/// Per-ion derivatives of U0; dx/dy sized n.
void u0_gradient(const NaturalParams& p, const Eigen::VectorXd& x,
                 const Eigen::VectorXd& y, Eigen::VectorXd& dx, Eigen::VectorXd& dy);

/// Per-ion second derivatives (U0 is a single-particle sum, so the Hessian is
/// block-diagonal over ions): d2/dx2, d2/dxdy, d2/dy2.
void u0_hessian_diag(const NaturalParams& p, const Eigen::VectorXd& x,
                     const Eigen::VectorXd& y, Eigen::VectorXd& dxx,
                     Eigen::VectorXd& dxy, Eigen::VectorXd& dyy);

/// C = g0^2 N_eff / (kappa |Delta0|).
double cooperativity(const NaturalParams& p, double n_eff);

/// Gaussian-envelope weight sum N_eff = sum_j exp(-(y_j-y0)^2/sigma^2) for a
/// chain on the standing-wave antinodes.
double effective_ion_number(const NaturalParams& p, const Eigen::VectorXd& y);

MeanFieldState mean_field(const NaturalParams& p, const IonConfiguration& c);

} // namespace ioncav
