#pragma once

#include <vector>

#include <Eigen/Core>

#include "ioncav/configuration.hpp"
#include "ioncav/params.hpp"

namespace ioncav {

/// Context for the uniformly-illuminated equidistant-chain soft-mode model:
/// V_s(x_s) = (1/2) omega_s^2 x_s^2 + eps (eta^2/kappa) arctan[C cos^2(k x_s/sqrt(N))].
struct UniformSoftMode {
    int n = 0;
    double omega_s = 0.0;  // sqrt(omega_t^2 - omega_tc^2), free-space soft mode
    double coop = 0.0;     // cooperativity with all N ions illuminated
};

/// Builds the context; computes omega_tc by bisection. Throws when
/// omega_t <= omega_tc (soft-mode frequency imaginary).
UniformSoftMode uniform_soft_mode(const NaturalParams& p, int n_ions);

double soft_mode_potential_uniform(const NaturalParams& p, const UniformSoftMode& m,
                                   double x_s);

struct ThresholdResult {
    double eta_th;          // closed form: eta_th^2 = N(1+C^2)/(4C) omega_s^2 kappa / omega_R
    double eta_th_numeric;  // bisection on the curvature sign change at x_s = 0
    double relative_gap;
};

ThresholdResult instability_threshold(const NaturalParams& p, const UniformSoftMode& m);

/// V_tot along the lowest transverse normal-mode direction of a linear
/// equilibrium, parameterized by the x-displacement of the central ion (the
/// ion carrying the largest soft-mode amplitude).
struct SoftModeCurve {
    Eigen::VectorXd displacement;  // central-ion x, natural units
    Eigen::VectorXd energy;        // V_tot - min
    std::vector<int> minima;       // interior local minima indices
    int central_ion = 0;
    double lowest_transverse_eigenvalue = 0.0;
};

SoftModeCurve soft_mode_potential_finite(const NaturalParams& p,
                                         const IonConfiguration& linear_config,
                                         const Eigen::VectorXd& displacement_grid);

} // namespace ioncav
