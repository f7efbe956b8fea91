#include "ioncav/softmode.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "ioncav/cavity.hpp"
#include "ioncav/equilibrium.hpp"
#include "ioncav/potential.hpp"

namespace ioncav {

UniformSoftMode uniform_soft_mode(const NaturalParams& p, int n_ions) {
    NaturalParams q = p;
    q.eta = 0.0;
    const double atc = critical_frequency(q, n_ions);
    if (p.at <= atc)
        throw ParamError("uniform_soft_mode: omega_t <= omega_tc, soft mode unstable");
    UniformSoftMode m;
    m.n = n_ions;
    m.omega_s = std::sqrt(p.at * p.at - atc * atc);
    m.coop = cooperativity(p, static_cast<double>(n_ions));
    return m;
}

double soft_mode_potential_uniform(const NaturalParams& p, const UniformSoftMode& m,
                                   double x_s) {
    const double c = std::cos(p.k * x_s / std::sqrt(static_cast<double>(m.n)));
    return 0.5 * m.omega_s * m.omega_s * x_s * x_s +
           p.eps * (p.eta * p.eta / p.kappa) * std::atan(m.coop * c * c);
}

ThresholdResult instability_threshold(const NaturalParams& p, const UniformSoftMode& m) {
    if (m.coop <= 0.0) throw ParamError("instability_threshold: C must be > 0");
    ThresholdResult r{};
    const double omega_r = p.recoil();
    r.eta_th = std::sqrt(m.n * (1.0 + m.coop * m.coop) / (4.0 * m.coop) * m.omega_s *
                         m.omega_s * p.kappa / omega_r);

    // independent route: sign change of d2Vs/dxs^2 at 0 versus eta
    const double h = 1e-4 * std::sqrt(static_cast<double>(m.n)) / p.k;
    auto curvature = [&](double eta) {
        NaturalParams q = p;
        q.eta = eta;
        const double v0 = soft_mode_potential_uniform(q, m, 0.0);
        const double vp = soft_mode_potential_uniform(q, m, h);
        const double vm = soft_mode_potential_uniform(q, m, -h);
        return (vp - 2.0 * v0 + vm) / (h * h);
    };
    double lo = 0.0, hi = 2.0 * r.eta_th;
    int guard = 0;
    while (curvature(hi) >= 0.0) {
        hi *= 2.0;
        if (++guard > 60) throw ParamError("instability_threshold: no curvature crossing");
    }
    for (int i = 0; i < 200 && hi - lo > 1e-10 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (curvature(mid) >= 0.0 ? lo : hi) = mid;
    }
    r.eta_th_numeric = 0.5 * (lo + hi);
    r.relative_gap = std::abs(r.eta_th_numeric - r.eta_th) / r.eta_th;
    return r;
}

SoftModeCurve soft_mode_potential_finite(const NaturalParams& p,
                                         const IonConfiguration& linear_config,
                                         const Eigen::VectorXd& displacement_grid) {
    const int n = linear_config.n();
    const Eigen::MatrixXd h = hessian(p, linear_config);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.topLeftCorner(n, n));
    const Eigen::VectorXd mode = es.eigenvectors().col(0);

    SoftModeCurve curve;
    curve.lowest_transverse_eigenvalue = es.eigenvalues()[0];
    int jc = 0;
    for (int j = 1; j < n; ++j)
        if (std::abs(mode[j]) > std::abs(mode[jc])) jc = j;
    curve.central_ion = jc;

    Eigen::VectorXd dir = Eigen::VectorXd::Zero(2 * n);
    dir.head(n) = mode / mode[jc];  // unit central-ion displacement

    const Eigen::VectorXd z0 = linear_config.packed();
    curve.displacement = displacement_grid;
    curve.energy.resize(displacement_grid.size());
    for (Eigen::Index i = 0; i < displacement_grid.size(); ++i)
        curve.energy[i] = total_potential(p, z0 + displacement_grid[i] * dir);
    curve.energy.array() -= curve.energy.minCoeff();

    for (Eigen::Index i = 1; i + 1 < curve.energy.size(); ++i)
        if (curve.energy[i] < curve.energy[i - 1] && curve.energy[i] < curve.energy[i + 1])
            curve.minima.push_back(static_cast<int>(i));
    return curve;
}

} // namespace ioncav
