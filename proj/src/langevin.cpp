#include "ioncav/langevin.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace ioncav {

GaussianSteadyState drift_diffusion(const NaturalParams& p, const MeanFieldState& mf,
                                    const NormalModes& modes, double coupling_floor) {
    const int n = modes.count();
    Eigen::VectorXd gamma_n = Eigen::VectorXd::Constant(n, p.gamma_m);
    Eigen::VectorXd nbar_n(n);
    for (int i = 0; i < n; ++i) nbar_n[i] = p.occupation(modes.omega[i]);
    return drift_diffusion(p, mf, modes, gamma_n, nbar_n, coupling_floor);
}

GaussianSteadyState drift_diffusion(const NaturalParams& p, const MeanFieldState& mf,
                                    const NormalModes& modes,
                                    const Eigen::VectorXd& gamma_n,
                                    const Eigen::VectorXd& nbar_n,
                                    double coupling_floor) {
    GaussianSteadyState s;
    s.abar = mf.abar;
    s.delta_eff = mf.delta_eff;
    s.kappa = p.kappa;

    const double cmax = modes.coupling.cwiseAbs().maxCoeff();
    for (int i = 0; i < modes.count(); ++i)
        if (coupling_floor <= 0.0 || std::abs(modes.coupling[i]) >= coupling_floor * cmax)
            s.retained.push_back(i);

    const int m = static_cast<int>(s.retained.size());
    s.omega.resize(m);
    s.coupling.resize(m);
    s.gamma.resize(m);
    s.occupation.resize(m);
    for (int i = 0; i < m; ++i) {
        const int src = s.retained[i];
        s.omega[i] = modes.omega[src];
        s.coupling[i] = modes.coupling[src];
        s.gamma[i] = gamma_n[src];
        s.occupation[i] = nbar_n[src];
    }

    const int dim = s.dim();
    const double re_a = s.abar.real(), im_a = s.abar.imag();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(dim, dim);

    a(0, 0) = -p.kappa;
    a(0, 1) = -s.delta_eff;
    a(1, 0) = s.delta_eff;
    a(1, 1) = -p.kappa;
    d(0, 0) = d(1, 1) = p.kappa;  // vacuum input

    for (int i = 0; i < m; ++i) {
        const int ix = 2 + 2 * i, iy = ix + 1;
        const double c = s.coupling[i];
        a(0, ix) = 2.0 * c * im_a;
        a(1, ix) = -2.0 * c * re_a;
        a(iy, 0) = -2.0 * c * re_a;
        a(iy, 1) = -2.0 * c * im_a;
        a(ix, ix) = a(iy, iy) = -s.gamma[i];
        a(ix, iy) = s.omega[i];
        a(iy, ix) = -s.omega[i];
        d(ix, ix) = d(iy, iy) = 2.0 * s.gamma[i] * (s.occupation[i] + 0.5);
    }
    s.drift = std::move(a);
    s.diffusion = std::move(d);
    return s;
}

double max_drift_eigenvalue_real(const Eigen::MatrixXd& drift) {
    return Eigen::EigenSolver<Eigen::MatrixXd>(drift, false)
        .eigenvalues()
        .real()
        .maxCoeff();
}

} // namespace ioncav
