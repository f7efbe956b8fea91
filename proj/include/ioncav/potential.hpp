#pragma once

#include <Eigen/Core>

#include "ioncav/cavity.hpp"
#include "ioncav/configuration.hpp"
#include "ioncav/params.hpp"

namespace ioncav {

struct CoincidentIonsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// V_tot = V_trap + V_Coul + V_eff with
/// V_eff = eps (eta^2/kappa) arctan(-Delta_eff/kappa).
double total_potential(const NaturalParams& p, const IonConfiguration& c);

/// Gradient of V_tot in packed coordinates (x..., y...). The cavity part is
/// eps nbar grad(U0) exactly (chain rule through the arctan).
Eigen::VectorXd gradient(const NaturalParams& p, const IonConfiguration& c);

/// 2N x 2N symmetric Hessian of V_tot, including the back-action term
/// eps (dnbar/dU0) grad(U0) grad(U0)^T.
Eigen::MatrixXd hessian(const NaturalParams& p, const IonConfiguration& c);

/// Hessian of V_trap + V_Coul + eps nbar U0 at frozen nbar: the curvature the
/// crystal sees when field fluctuations are treated separately. Used as the
/// normal-mode basis.
Eigen::MatrixXd hessian_fixed_field(const NaturalParams& p, const IonConfiguration& c);

// Convenience overloads on packed coordinates.
double total_potential(const NaturalParams& p, const Eigen::VectorXd& z);
Eigen::VectorXd gradient(const NaturalParams& p, const Eigen::VectorXd& z);

} // namespace ioncav
