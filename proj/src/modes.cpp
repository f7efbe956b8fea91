#include "ioncav/modes.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "ioncav/cavity.hpp"
#include "ioncav/potential.hpp"

namespace ioncav {

NormalModes normal_modes(const NaturalParams& p, const IonConfiguration& equilibrium) {
    const Eigen::MatrixXd h = hessian_fixed_field(p, equilibrium);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    NormalModes m;
    const Eigen::VectorXd& ev = es.eigenvalues();
    if (ev[0] <= 0.0)
        throw UnstableConfigurationError(
            "normal_modes: configuration unstable (non-positive curvature)");
    m.omega = ev.cwiseSqrt();
    m.matrix = es.eigenvectors();
    m.zero_point = (p.eps / 2.0 * m.omega.cwiseInverse().array()).sqrt();
    m.coupling = couplings(p, equilibrium, m);
    return m;
}

Eigen::VectorXd couplings(const NaturalParams& p, const IonConfiguration& equilibrium,
                          const NormalModes& modes) {
    // d(g_j^2) = Delta0 * d(U0 per-ion term), so project the U0 gradient.
    Eigen::VectorXd ux, uy;
    u0_gradient(p, equilibrium.x, equilibrium.y, ux, uy);
    const int n = equilibrium.n();
    Eigen::VectorXd grad_u0(2 * n);
    grad_u0.head(n) = ux;
    grad_u0.tail(n) = uy;
    return modes.zero_point.cwiseProduct(modes.matrix.transpose() * grad_u0);
}

} // namespace ioncav
