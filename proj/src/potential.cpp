#include "ioncav/potential.hpp"

#include <cmath>

#include "ioncav/kernels.hpp"

namespace ioncav {

namespace {

void check_separations(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const Eigen::Index n = x.size();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double dx = x[i] - x[j], dy = y[i] - y[j];
            if (dx * dx + dy * dy == 0.0)
                throw CoincidentIonsError("coincident ions: Coulomb energy diverges");
        }
}

double trap_energy(const NaturalParams& p, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& y) {
    return 0.5 * (p.at * p.at * x.squaredNorm() + y.squaredNorm());
}

// nbar and its derivative with respect to U0.
struct FieldResponse {
    double nbar;
    double dnbar_du0;
};

FieldResponse field_response(const NaturalParams& p, double u0) {
    const double deff = p.delta_c - u0;
    const double den = p.kappa * p.kappa + deff * deff;
    const double nbar = p.eta * p.eta / den;
    return {nbar, 2.0 * deff * nbar / den};
}

} // namespace

double total_potential(const NaturalParams& p, const Eigen::VectorXd& z) {
    return total_potential(p, IonConfiguration::unpack(z));
}

double total_potential(const NaturalParams& p, const IonConfiguration& c) {
    check_separations(c.x, c.y);
    const int n = c.n();
    Eigen::VectorXd scratch_x = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd scratch_y = Eigen::VectorXd::Zero(n);
    const double coul = kernels::active().coulomb_energy_gradient(
        c.x.data(), c.y.data(), static_cast<std::size_t>(n), scratch_x.data(),
        scratch_y.data());
    double v = trap_energy(p, c.x, c.y) + coul;
    if (p.eta > 0.0 && p.g0 > 0.0) {
        const double deff = p.delta_c - u0_shift(p, c);
        v += p.eps * (p.eta * p.eta / p.kappa) * std::atan(-deff / p.kappa);
    }
    return v;
}

Eigen::VectorXd gradient(const NaturalParams& p, const Eigen::VectorXd& z) {
    return gradient(p, IonConfiguration::unpack(z));
}

Eigen::VectorXd gradient(const NaturalParams& p, const IonConfiguration& c) {
    check_separations(c.x, c.y);
    const int n = c.n();
    Eigen::VectorXd gx = p.at * p.at * c.x;
    Eigen::VectorXd gy = c.y;
    kernels::active().coulomb_energy_gradient(c.x.data(), c.y.data(),
                                              static_cast<std::size_t>(n), gx.data(),
                                              gy.data());
    if (p.eta > 0.0 && p.g0 > 0.0) {
        const double u0 = u0_shift(p, c);
        const double nbar = field_response(p, u0).nbar;
        Eigen::VectorXd ux, uy;
        u0_gradient(p, c.x, c.y, ux, uy);
        gx += p.eps * nbar * ux;
        gy += p.eps * nbar * uy;
    }
    Eigen::VectorXd g(2 * n);
    g.head(n) = gx;
    g.tail(n) = gy;
    return g;
}

namespace {

// Trap + Coulomb Hessian in packed coordinates.
Eigen::MatrixXd mechanical_hessian(const NaturalParams& p, const IonConfiguration& c) {
    const int n = c.n();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
        h(j, j) = p.at * p.at;
        h(n + j, n + j) = 1.0;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double dx = c.x[i] - c.x[j];
            const double dy = c.y[i] - c.y[j];
            const double r2 = dx * dx + dy * dy;
            const double inv_r = 1.0 / std::sqrt(r2);
            const double inv_r3 = inv_r / r2;
            const double inv_r5 = inv_r3 / r2;
            // d^2(1/r)/du duT = 3 u uT / r^5 - I/r^3
            const double hxx = 3.0 * dx * dx * inv_r5 - inv_r3;
            const double hyy = 3.0 * dy * dy * inv_r5 - inv_r3;
            const double hxy = 3.0 * dx * dy * inv_r5;
            h(i, i) += hxx;
            h(j, j) += hxx;
            h(i, j) -= hxx;
            h(j, i) -= hxx;
            h(n + i, n + i) += hyy;
            h(n + j, n + j) += hyy;
            h(n + i, n + j) -= hyy;
            h(n + j, n + i) -= hyy;
            h(i, n + i) += hxy;
            h(n + i, i) += hxy;
            h(j, n + j) += hxy;
            h(n + j, j) += hxy;
            h(i, n + j) -= hxy;
            h(n + j, i) -= hxy;
            h(j, n + i) -= hxy;
            h(n + i, j) -= hxy;
        }
    return h;
}

void add_u0_curvature(const NaturalParams& p, const IonConfiguration& c, double scale,
                      Eigen::MatrixXd& h) {
    const int n = c.n();
    Eigen::VectorXd dxx, dxy, dyy;
    u0_hessian_diag(p, c.x, c.y, dxx, dxy, dyy);
    for (int j = 0; j < n; ++j) {
        h(j, j) += scale * dxx[j];
        h(n + j, n + j) += scale * dyy[j];
        h(j, n + j) += scale * dxy[j];
        h(n + j, j) += scale * dxy[j];
    }
}

} // namespace

Eigen::MatrixXd hessian(const NaturalParams& p, const IonConfiguration& c) {
    check_separations(c.x, c.y);
    Eigen::MatrixXd h = mechanical_hessian(p, c);
    if (p.eta > 0.0 && p.g0 > 0.0) {
        const int n = c.n();
        const double u0 = u0_shift(p, c);
        const auto [nbar, dnbar] = field_response(p, u0);
        add_u0_curvature(p, c, p.eps * nbar, h);
        Eigen::VectorXd ux, uy;
        u0_gradient(p, c.x, c.y, ux, uy);
        Eigen::VectorXd grad_u0(2 * n);
        grad_u0.head(n) = ux;
        grad_u0.tail(n) = uy;
        // outer product first: entrywise scaling keeps H = H^T exact
        const Eigen::MatrixXd outer = grad_u0 * grad_u0.transpose();
        h += (p.eps * dnbar) * outer;
    }
    return h;
}

Eigen::MatrixXd hessian_fixed_field(const NaturalParams& p, const IonConfiguration& c) {
    check_separations(c.x, c.y);
    Eigen::MatrixXd h = mechanical_hessian(p, c);
    if (p.eta > 0.0 && p.g0 > 0.0) {
        const double nbar = field_response(p, u0_shift(p, c)).nbar;
        add_u0_curvature(p, c, p.eps * nbar, h);
    }
    return h;
}

} // namespace ioncav
