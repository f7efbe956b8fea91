#include "ioncav/lyapunov.hpp"

#include <complex>

#include <Eigen/Dense>

namespace ioncav {

// With A = U T U^H (complex Schur), substituting X = U Z U^T reduces
// A X + X A^T + D = 0 to T Z + Z T^T = -U^H D conj(U), solvable column by
// column from the last: (T + T_kk I) z_k = rhs_k with the already-known
// columns folded into rhs.
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d) {
    using Mat = Eigen::MatrixXcd;
    const Eigen::Index n = a.rows();
    Eigen::ComplexSchur<Eigen::MatrixXd> schur(a);
    if (schur.info() != Eigen::Success)
        throw NoSteadyStateError("lyapunov: Schur decomposition failed");
    const Mat& t = schur.matrixT();
    const Mat& u = schur.matrixU();

    for (Eigen::Index i = 0; i < n; ++i)
        if (t(i, i).real() >= 0.0)
            throw NoSteadyStateError("lyapunov: drift matrix is not Hurwitz");

    const Mat dt = u.adjoint() * d * u.conjugate();
    Mat z = Mat::Zero(n, n);
    for (Eigen::Index k = n - 1; k >= 0; --k) {
        Eigen::VectorXcd rhs = -dt.col(k);
        for (Eigen::Index m = k + 1; m < n; ++m) rhs -= t(k, m) * z.col(m);
        Mat lhs = t;
        lhs.diagonal().array() += t(k, k);
        z.col(k) = lhs.triangularView<Eigen::Upper>().solve(rhs);
    }
    Eigen::MatrixXd x = (u * z * u.transpose()).real();
    return 0.5 * (x + x.transpose());
}

double lyapunov_residual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d,
                         const Eigen::MatrixXd& x) {
    return (a * x + x * a.transpose() + d).cwiseAbs().maxCoeff();
}

} // namespace ioncav
