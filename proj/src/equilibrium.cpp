#include "ioncav/equilibrium.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "ioncav/potential.hpp"

namespace ioncav {

namespace {

Objective make_objective(const NaturalParams& p) {
    return [&p](const Eigen::VectorXd& z, Eigen::VectorXd& g) {
        g = gradient(p, z);
        return total_potential(p, z);
    };
}

double lowest_eig(const Eigen::MatrixXd& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues()[0];
}

} // namespace

EquilibriumResult find_equilibrium(const NaturalParams& p, const IonConfiguration& guess,
                                   const MinimizeOptions& opt) {
    EquilibriumResult out;
    Eigen::VectorXd z = guess.packed();
    const Objective fg = make_objective(p);

    const int max_escapes = 5;
    for (int round = 0;; ++round) {
        MinimizeResult mr = minimize_lbfgs(fg, z, opt);
        z = mr.z;
        out.energy = mr.value;
        out.grad_norm = mr.grad_norm;
        out.iterations += mr.iterations;
        out.converged = mr.converged;

        const Eigen::MatrixXd h = hessian(p, IonConfiguration::unpack(z));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
        out.lowest_eigenvalue = es.eigenvalues()[0];
        const double scale = std::max(1.0, std::abs(es.eigenvalues().maxCoeff()));
        out.is_minimum = out.lowest_eigenvalue > -1e-9 * scale;
        if (out.is_minimum || !mr.converged || round >= max_escapes) break;

        // saddle: kick along the unstable direction and retry
        const double amp = p.k > 0.0 ? 0.1 / p.k : 1e-2;
        z += amp * es.eigenvectors().col(0);
        out.escape_rounds = round + 1;
    }

    out.config = IonConfiguration::unpack(z);
    out.config.canonicalize();
    return out;
}

IonConfiguration linear_chain_equilibrium(const NaturalParams& p,
                                          const MinimizeOptions& opt) {
    const int n = p.n;
    IonConfiguration c;
    c.x = Eigen::VectorXd::Zero(n);
    c.y.resize(n);
    // spread comparable to the equilibrium chain extent
    const double half = 1.2 * std::pow(static_cast<double>(n), 0.56);
    for (int j = 0; j < n; ++j)
        c.y[j] = n == 1 ? 0.0 : -half + 2.0 * half * j / (n - 1);

    // At x = 0 every transverse force vanishes identically, so the minimizer
    // stays on the axis whatever the transverse stability.
    const Objective fg = make_objective(p);
    MinimizeResult mr = minimize_lbfgs(fg, c.packed(), opt);
    IonConfiguration out = IonConfiguration::unpack(mr.z);
    out.canonicalize();
    return out;
}

IonConfiguration zigzag_guess(const NaturalParams& p, const IonConfiguration& linear) {
    IonConfiguration c = linear;
    const double amp = p.k > 0.0 ? 0.1 / p.k : 1e-2;
    for (int j = 0; j < c.n(); ++j) c.x[j] += (j % 2 == 0 ? amp : -amp);
    return c;
}

double lowest_transverse_eigenvalue(const NaturalParams& p, const IonConfiguration& c) {
    const int n = c.n();
    return lowest_eig(hessian(p, c).topLeftCorner(n, n));
}

double critical_frequency(const NaturalParams& p, int n_ions) {
    if (p.eta != 0.0) throw ParamError("critical_frequency: requires eta = 0");
    if (n_ions < 2) throw ParamError("critical_frequency: needs at least 2 ions");
    NaturalParams q = p;
    q.n = n_ions;
    q.eta = 0.0;
    // The axial equilibrium does not depend on omega_t while the chain is
    // linear, so compute it once.
    const IonConfiguration lin = linear_chain_equilibrium(q);
    auto f = [&](double at) {
        NaturalParams r = q;
        r.at = at;
        return lowest_transverse_eigenvalue(r, lin);
    };
    double lo = 1e-3, hi = 1.0;
    if (f(lo) >= 0.0) throw ParamError("critical_frequency: bracket failure (low end)");
    int guard = 0;
    while (f(hi) <= 0.0) {
        hi *= 2.0;
        if (++guard > 60) throw ParamError("critical_frequency: bracket failure (high end)");
    }
    while (hi - lo > 1e-6 * hi) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) <= 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace ioncav
