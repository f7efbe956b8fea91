#include "ioncav/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace ioncav {

Eigen::MatrixXd symplectic_form(int n_modes) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int m = 0; m < n_modes; ++m) {
        omega(2 * m, 2 * m + 1) = 1.0;
        omega(2 * m + 1, 2 * m) = -1.0;
    }
    return omega;
}

Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& sigma) {
    const int n_modes = static_cast<int>(sigma.rows()) / 2;
    const Eigen::MatrixXd m = symplectic_form(n_modes) * sigma;
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    std::vector<double> mods(2 * n_modes);
    for (int i = 0; i < 2 * n_modes; ++i) mods[i] = std::abs(es.eigenvalues()[i]);
    std::sort(mods.begin(), mods.end());
    // eigenvalues come in +-i nu pairs; keep one per pair
    Eigen::VectorXd nu(n_modes);
    for (int i = 0; i < n_modes; ++i) nu[i] = 0.5 * (mods[2 * i] + mods[2 * i + 1]);
    return nu;
}

Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& sigma, int n_a) {
    const int n_modes = static_cast<int>(sigma.rows()) / 2;
    Eigen::VectorXd flip = Eigen::VectorXd::Ones(2 * n_modes);
    for (int m = n_a; m < n_modes; ++m) flip[2 * m + 1] = -1.0;
    return flip.asDiagonal() * sigma * flip.asDiagonal();
}

double log_negativity(const Eigen::MatrixXd& sigma, int n_a) {
    const int n_modes = static_cast<int>(sigma.rows()) / 2;
    if (n_a <= 0 || n_a >= n_modes)
        throw ParamError("log_negativity: partition must split the modes");
    const Eigen::VectorXd nu = symplectic_eigenvalues(partial_transpose(sigma, n_a));
    return std::max(0.0, -std::log2(2.0 * nu[0]));
}

double physicality_margin(const Eigen::MatrixXd& sigma) {
    const int n_modes = static_cast<int>(sigma.rows()) / 2;
    Eigen::MatrixXcd m = sigma.cast<std::complex<double>>();
    m += std::complex<double>(0.0, 0.5) * symplectic_form(n_modes).cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues()[0];
}

Eigen::MatrixXd select_modes(const Eigen::MatrixXd& sigma, const std::vector<int>& modes) {
    const int m = static_cast<int>(modes.size());
    Eigen::MatrixXd out(2 * m, 2 * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            out.block<2, 2>(2 * i, 2 * j) = sigma.block<2, 2>(2 * modes[i], 2 * modes[j]);
    return out;
}

} // namespace ioncav
