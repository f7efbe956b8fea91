#pragma once

#include <vector>

#include <Eigen/Core>

#include "ioncav/params.hpp"

namespace ioncav {

/// Symplectic form for n_modes modes in (X_1, Y_1, X_2, Y_2, ...) ordering.
Eigen::MatrixXd symplectic_form(int n_modes);

/// Symplectic spectrum of a (physical or partially transposed) covariance
/// matrix: the moduli of the eigenvalues of i Omega Sigma, one per mode,
/// ascending. A physical state has all values >= 1/2.
Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& sigma);

/// Partial transpose: flips the Y quadratures of modes [n_a, n_modes).
Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& sigma, int n_a);

/// E_N = max(0, -log2(2 nu_min)) with nu_min the smallest symplectic
/// eigenvalue of the partially transposed covariance, partition = first n_a
/// modes against the rest.
double log_negativity(const Eigen::MatrixXd& sigma, int n_a = 1);

/// Smallest eigenvalue of Sigma + i Omega/2; physical states satisfy >= 0
/// (up to tolerance).
double physicality_margin(const Eigen::MatrixXd& sigma);

/// Covariance restricted to a subset of modes (indices into the mode list).
Eigen::MatrixXd select_modes(const Eigen::MatrixXd& sigma, const std::vector<int>& modes);

} // namespace ioncav
