#pragma once

#include <Eigen/Core>

#include "ioncav/configuration.hpp"
#include "ioncav/minimize.hpp"
#include "ioncav/params.hpp"

namespace ioncav {

struct EquilibriumResult {
    IonConfiguration config;
    double energy = 0.0;
    double grad_norm = 0.0;
    double lowest_eigenvalue = 0.0;  // of the full Hessian at the solution
    int iterations = 0;
    int escape_rounds = 0;  // saddle escapes taken
    bool converged = false;
    bool is_minimum = false;
};

/// Local minimum of V_tot from an initial guess. Quasi-Newton with analytic
/// gradient; saddles are escaped by perturbing along the lowest Hessian
/// eigenvector. The returned configuration is sorted by y and classified.
EquilibriumResult find_equilibrium(const NaturalParams& p, const IonConfiguration& guess,
                                   const MinimizeOptions& opt = {});

/// Stationary linear chain: all x_j = 0 (exact by symmetry), axial positions
/// minimizing trap + Coulomb (+ cavity envelope when the pump is on). May be
/// transversally unstable; stability is not checked here.
IonConfiguration linear_chain_equilibrium(const NaturalParams& p,
                                          const MinimizeOptions& opt = {});

/// Linear chain plus alternating transverse offsets of amplitude 0.1/k,
/// seeding the zigzag branch.
IonConfiguration zigzag_guess(const NaturalParams& p, const IonConfiguration& linear);

/// Lowest eigenvalue of the transverse (x) block of the Hessian at a linear
/// configuration.
double lowest_transverse_eigenvalue(const NaturalParams& p, const IonConfiguration& c);

/// Free-space critical transverse frequency (units of omega_a): bisection on
/// omega_t for the zero crossing of the lowest transverse Hessian eigenvalue
/// of the linear equilibrium. Requires eta = 0. Relative tolerance 1e-6.
double critical_frequency(const NaturalParams& p, int n_ions);

} // namespace ioncav
