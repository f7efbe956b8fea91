#pragma once

#include <functional>

#include <Eigen/Core>

namespace ioncav {

struct MinimizeOptions {
    double gtol = 1e-10;   // infinity norm of the gradient
    int max_iter = 100000;
    int memory = 8;
};

struct MinimizeResult {
    Eigen::VectorXd z;
    double value = 0.0;
    double grad_norm = 0.0;  // infinity norm at z
    int iterations = 0;
    bool converged = false;
};

/// Objective callback: fills grad and returns the value.
using Objective = std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>;

/// Limited-memory BFGS with backtracking line search.
MinimizeResult minimize_lbfgs(const Objective& fg, Eigen::VectorXd z0,
                              const MinimizeOptions& opt = {});

} // namespace ioncav
