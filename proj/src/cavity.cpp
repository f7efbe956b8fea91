#include "ioncav/cavity.hpp"

#include <cmath>

namespace ioncav {

namespace {
inline void check_detuning(const NaturalParams& p) {
    if (p.delta0 == 0.0) throw ParamError("Delta0 = 0: dispersive shift singular");
}
} // namespace

double u0_shift(const NaturalParams& p, const Eigen::VectorXd& x,
                const Eigen::VectorXd& y) {
    check_detuning(p);
    const double q = p.g0 * p.g0 / p.delta0;
    double s = 0.0;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        const double c = std::cos(p.k * x[j]);
        const double dy = (y[j] - p.y0) / p.sigma;
        s += c * c * std::exp(-dy * dy);
    }
    return q * s;
}

double u0_shift(const NaturalParams& p, const IonConfiguration& c) {
    return u0_shift(p, c.x, c.y);
}

void u0_gradient(const NaturalParams& p, const Eigen::VectorXd& x,
                 const Eigen::VectorXd& y, Eigen::VectorXd& dx, Eigen::VectorXd& dy) {
    check_detuning(p);
    const Eigen::Index n = x.size();
    dx.resize(n);
    dy.resize(n);
    const double q = p.g0 * p.g0 / p.delta0;
    for (Eigen::Index j = 0; j < n; ++j) {
        const double c = std::cos(p.k * x[j]);
        const double u = (y[j] - p.y0) / p.sigma;
        const double w = std::exp(-u * u);
        dx[j] = -q * p.k * std::sin(2.0 * p.k * x[j]) * w;
        dy[j] = q * c * c * w * (-2.0 * (y[j] - p.y0) / (p.sigma * p.sigma));
    }
}

void u0_hessian_diag(const NaturalParams& p, const Eigen::VectorXd& x,
                     const Eigen::VectorXd& y, Eigen::VectorXd& dxx,
                     Eigen::VectorXd& dxy, Eigen::VectorXd& dyy) {
    check_detuning(p);
    const Eigen::Index n = x.size();
    dxx.resize(n);
    dxy.resize(n);
    dyy.resize(n);
    const double q = p.g0 * p.g0 / p.delta0;
    const double s2 = p.sigma * p.sigma;
    for (Eigen::Index j = 0; j < n; ++j) {
        const double c = std::cos(p.k * x[j]);
        const double dyj = y[j] - p.y0;
        const double w = std::exp(-dyj * dyj / s2);
        dxx[j] = -2.0 * q * p.k * p.k * std::cos(2.0 * p.k * x[j]) * w;
        dxy[j] = q * p.k * std::sin(2.0 * p.k * x[j]) * w * 2.0 * dyj / s2;
        dyy[j] = q * c * c * w * (4.0 * dyj * dyj / (s2 * s2) - 2.0 / s2);
    }
}

double cooperativity(const NaturalParams& p, double n_eff) {
    if (p.kappa <= 0.0) throw ParamError("kappa must be > 0");
    check_detuning(p);
    return p.g0 * p.g0 * n_eff / (p.kappa * std::abs(p.delta0));
}

double effective_ion_number(const NaturalParams& p, const Eigen::VectorXd& y) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < y.size(); ++j) {
        const double u = (y[j] - p.y0) / p.sigma;
        s += std::exp(-u * u);
    }
    return s;
}

MeanFieldState mean_field(const NaturalParams& p, const IonConfiguration& c) {
    MeanFieldState m;
    m.u0 = u0_shift(p, c);
    m.delta_eff = p.delta_c - m.u0;
    m.abar = p.eta / std::complex<double>(p.kappa, -m.delta_eff);
    m.nbar = std::norm(m.abar);
    m.i_out = 2.0 * p.kappa * m.nbar;
    m.dispersive_margin = dispersive_margin(p, m.nbar);
    return m;
}

} // namespace ioncav
