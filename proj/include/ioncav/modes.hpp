#pragma once

#include <Eigen/Core>

#include "ioncav/configuration.hpp"
#include "ioncav/params.hpp"

namespace ioncav {

struct UnstableConfigurationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Crystal normal modes about an equilibrium, from the curvature at frozen
/// photon number (field fluctuations couple separately through c_n).
struct NormalModes {
    Eigen::VectorXd omega;       // ascending, natural units
    Eigen::MatrixXd matrix;      // orthogonal, rows packed (x..., y...), columns = modes
    Eigen::VectorXd zero_point;  // B_n0 = sqrt(eps / (2 omega_n))
    Eigen::VectorXd coupling;    // c_n

    int count() const { return static_cast<int>(omega.size()); }
};

/// Diagonalizes the fixed-field Hessian. Throws UnstableConfigurationError if
/// any eigenvalue is non-positive.
NormalModes normal_modes(const NaturalParams& p, const IonConfiguration& equilibrium);

/// c_n = (B_n0/Delta0) sum_j [M^x_jn d(g_j^2)/dx_j + M^y_jn d(g_j^2)/dy_j]
/// with g_j = g0 cos(k x_j) exp(-(y_j-y0)^2/(2 sigma^2)).
Eigen::VectorXd couplings(const NaturalParams& p, const IonConfiguration& equilibrium,
                          const NormalModes& modes);

} // namespace ioncav
