#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "ioncav/cavity.hpp"
#include "ioncav/modes.hpp"
#include "ioncav/params.hpp"

namespace ioncav {

/// Linearized photon-phonon system in the real quadrature basis
/// (X_a, Y_a, X_1, Y_1, ...), X = (b + b^dag)/sqrt(2). Vacuum variance 1/2.
struct GaussianSteadyState {
    Eigen::MatrixXd drift;       // A
    Eigen::MatrixXd diffusion;   // D
    Eigen::MatrixXd covariance;  // Sigma, empty until solved
    std::complex<double> abar{};
    double delta_eff = 0.0;
    double kappa = 0.0;
    // retained phonon modes
    std::vector<int> retained;
    Eigen::VectorXd omega;
    Eigen::VectorXd coupling;   // c_n
    Eigen::VectorXd gamma;      // Gamma_n
    Eigen::VectorXd occupation; // N_n

    int n_modes() const { return static_cast<int>(omega.size()); }
    int dim() const { return 2 + 2 * n_modes(); }
};

/// Builds drift and diffusion matrices. Cavity input is vacuum; phonon inputs
/// thermal with occupations from the bath parameters. Modes with
/// |c_n| < coupling_floor * max|c| are dropped (floor 0 keeps all).
GaussianSteadyState drift_diffusion(const NaturalParams& p, const MeanFieldState& mf,
                                    const NormalModes& modes,
                                    double coupling_floor = 0.0);

/// Per-mode bath overrides (sized like modes.omega) for callers that need
/// non-uniform rates or occupations.
GaussianSteadyState drift_diffusion(const NaturalParams& p, const MeanFieldState& mf,
                                    const NormalModes& modes,
                                    const Eigen::VectorXd& gamma_n,
                                    const Eigen::VectorXd& nbar_n,
                                    double coupling_floor = 0.0);

double max_drift_eigenvalue_real(const Eigen::MatrixXd& drift);

} // namespace ioncav
