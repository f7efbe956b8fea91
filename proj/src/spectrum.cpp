#include "ioncav/spectrum.hpp"

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "ioncav/kernels.hpp"
#include "ioncav/lyapunov.hpp"

namespace ioncav {

Eigen::VectorXd output_spectrum_analytic(const GaussianSteadyState& sys,
                                         const Eigen::VectorXd& nu) {
    const int m = sys.n_modes();
    Eigen::VectorXd c2 = sys.coupling.cwiseProduct(sys.coupling);
    kernels::SpectrumInputs in;
    in.c2 = c2.data();
    in.omega = sys.omega.data();
    in.gamma = sys.gamma.data();
    in.nbar = sys.occupation.data();
    in.n_modes = static_cast<std::size_t>(m);
    in.kappa = sys.kappa;
    in.delta_eff = sys.delta_eff;
    in.photons = std::norm(sys.abar);
    Eigen::VectorXd s(nu.size());
    kernels::active().spectrum_grid(in, nu.data(), static_cast<std::size_t>(nu.size()),
                                    s.data());
    return s;
}

// Complex mode basis (da, da^dag, b_1, b_1^dag, ...): solve
// (-i nu I - A_c) v = B w per frequency and read the da row. The output
// coefficients against (a_in^dag, b_in, b_in^dag) weighted by the input
// occupations give the normally-ordered spectrum.
Eigen::VectorXd output_spectrum_numeric(const GaussianSteadyState& sys,
                                        const Eigen::VectorXd& nu) {
    using cd = std::complex<double>;
    const cd i1(0.0, 1.0);
    const int m = sys.n_modes();
    const int dim = 2 + 2 * m;
    const cd a = sys.abar;
    const double kap = sys.kappa, deff = sys.delta_eff;

    if (max_drift_eigenvalue_real(sys.drift) >= 0.0)
        throw NoSteadyStateError("output_spectrum_numeric: drift is not Hurwitz");

    Eigen::MatrixXcd ac = Eigen::MatrixXcd::Zero(dim, dim);
    ac(0, 0) = i1 * deff - kap;
    ac(1, 1) = -i1 * deff - kap;
    for (int j = 0; j < m; ++j) {
        const int ib = 2 + 2 * j;
        const double c = sys.coupling[j];
        ac(0, ib) = ac(0, ib + 1) = -i1 * c * a;
        ac(1, ib) = ac(1, ib + 1) = i1 * c * std::conj(a);
        ac(ib, 0) = -i1 * c * std::conj(a);
        ac(ib, 1) = -i1 * c * a;
        ac(ib + 1, 0) = i1 * c * std::conj(a);
        ac(ib + 1, 1) = i1 * c * a;
        ac(ib, ib) = -i1 * sys.omega[j] - sys.gamma[j];
        ac(ib + 1, ib + 1) = i1 * sys.omega[j] - sys.gamma[j];
    }
    Eigen::VectorXd bdiag(dim);
    bdiag[0] = bdiag[1] = std::sqrt(2.0 * kap);
    for (int j = 0; j < m; ++j)
        bdiag[2 + 2 * j] = bdiag[3 + 2 * j] = std::sqrt(2.0 * sys.gamma[j]);

    const double i0 = 2.0 * kap * std::norm(a);
    Eigen::VectorXd s(nu.size());
    Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(dim);
    e1[0] = 1.0;
    for (Eigen::Index iv = 0; iv < nu.size(); ++iv) {
        Eigen::MatrixXcd lhs = -ac;
        lhs.diagonal().array() -= i1 * nu[iv];
        // row of the resolvent: w^H B with (lhs)^H w = e1
        Eigen::VectorXcd w = lhs.adjoint().partialPivLu().solve(e1);
        double acc = 2.0 * kap * std::norm(std::conj(w[1]) * bdiag[1]);
        for (int j = 0; j < m; ++j) {
            const double tm = 2.0 * kap * std::norm(std::conj(w[2 + 2 * j]) * bdiag[2 + 2 * j]);
            const double tp = 2.0 * kap * std::norm(std::conj(w[3 + 2 * j]) * bdiag[3 + 2 * j]);
            acc += tm * sys.occupation[j] + tp * (sys.occupation[j] + 1.0);
        }
        s[iv] = acc / i0;
    }
    return s;
}

namespace {

struct Peak {
    bool valid = false;
    Eigen::Index idx = 0;
};

Peak highest_local_max(const Eigen::VectorXd& s, Eigen::Index lo, Eigen::Index hi) {
    Peak p;
    for (Eigen::Index i = std::max<Eigen::Index>(lo, 1); i <= std::min(hi, s.size() - 2); ++i) {
        if (s[i] > s[i - 1] && s[i] > s[i + 1]) {
            if (!p.valid || s[i] > s[p.idx]) {
                p.valid = true;
                p.idx = i;
            }
        }
    }
    return p;
}

} // namespace

FanoScan fano_signature(const GaussianSteadyState& sys, const Eigen::VectorXd& nu,
                        const Eigen::VectorXd& s) {
    constexpr double coupling_floor = 0.05;  // fraction of the strongest |c_n|
    constexpr double dip_floor = 0.05;       // dip depth relative to the peak

    FanoScan scan;
    const int m = sys.n_modes();
    if (m == 0 || nu.size() < 8) return scan;
    const double dgrid = nu[1] - nu[0];
    const double cmax = sys.coupling.cwiseAbs().maxCoeff();
    if (cmax <= 0.0) return scan;

    for (int j = 0; j < m; ++j) {
        if (std::abs(sys.coupling[j]) < coupling_floor * cmax) continue;
        // peak search radius: half the distance to the nearest other mode
        double gap = std::numeric_limits<double>::infinity();
        for (int l = 0; l < m; ++l)
            if (l != j) gap = std::min(gap, std::abs(sys.omega[l] - sys.omega[j]));
        const double radius = std::isfinite(gap) ? 0.5 * gap : 0.25 * sys.omega[j];

        for (double side : {1.0, -1.0}) {
            const double target = side * sys.omega[j];
            const auto lo = static_cast<Eigen::Index>(std::floor((target - radius - nu[0]) / dgrid));
            const auto hi = static_cast<Eigen::Index>(std::ceil((target + radius - nu[0]) / dgrid));
            if (hi < 1 || lo > nu.size() - 2) continue;
            const Peak pk = highest_local_max(s, lo, hi);
            if (!pk.valid) continue;
            const double speak = s[pk.idx];

            // half width at half maximum, the nearer side
            double hwhm = std::numeric_limits<double>::infinity();
            for (Eigen::Index i = pk.idx; i < s.size(); ++i)
                if (s[i] <= 0.5 * speak) {
                    hwhm = nu[i] - nu[pk.idx];
                    break;
                }
            for (Eigen::Index i = pk.idx; i >= 0; --i)
                if (s[i] <= 0.5 * speak) {
                    hwhm = std::min(hwhm, nu[pk.idx] - nu[i]);
                    break;
                }
            if (!std::isfinite(hwhm)) continue;

            const auto wlo = static_cast<Eigen::Index>(std::floor((nu[pk.idx] - 3.0 * hwhm - nu[0]) / dgrid));
            const auto whi = static_cast<Eigen::Index>(std::ceil((nu[pk.idx] + 3.0 * hwhm - nu[0]) / dgrid));
            for (Eigen::Index i = std::max<Eigen::Index>(wlo, 1);
                 i <= std::min(whi, s.size() - 2); ++i) {
                if (s[i] < s[i - 1] && s[i] < s[i + 1]) {
                    const double depth = 1.0 - s[i] / speak;
                    if (depth >= dip_floor) {
                        FanoHit hit;
                        hit.mode = j;
                        hit.side = side;
                        hit.peak_nu = nu[pk.idx];
                        hit.peak_value = speak;
                        hit.hwhm = hwhm;
                        hit.dip_nu = nu[i];
                        hit.dip_depth = depth;
                        scan.hits.push_back(hit);
                        scan.found = true;
                        break;
                    }
                }
            }
        }
    }
    return scan;
}

} // namespace ioncav
