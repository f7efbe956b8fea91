#pragma once

#include <stdexcept>

#include <Eigen/Core>

namespace ioncav {

struct NoSteadyStateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Solves A X + X A^T + D = 0 for symmetric X (Bartels-Stewart on the complex
/// Schur form of A). Throws NoSteadyStateError when A is not Hurwitz.
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d);

/// max |(A X + X A^T + D)_ij|
double lyapunov_residual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d,
                         const Eigen::MatrixXd& x);

} // namespace ioncav
