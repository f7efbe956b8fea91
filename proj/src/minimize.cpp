#include "ioncav/minimize.hpp"

#include <cmath>
#include <deque>

namespace ioncav {

namespace {
struct Pair {
    Eigen::VectorXd s, y;
    double rho;
};
} // namespace

MinimizeResult minimize_lbfgs(const Objective& fg, Eigen::VectorXd z0,
                              const MinimizeOptions& opt) {
    const Eigen::Index n = z0.size();
    Eigen::VectorXd g(n), g_new(n);
    Eigen::VectorXd z = std::move(z0);
    double f = fg(z, g);

    std::deque<Pair> mem;
    double h0 = 1.0;  // initial inverse-Hessian scale
    MinimizeResult res;
    int it = 0;
    bool restarted = false;

    for (; it < opt.max_iter; ++it) {
        const double gnorm = g.lpNorm<Eigen::Infinity>();
        if (gnorm < opt.gtol) {
            res.converged = true;
            break;
        }

        // two-loop recursion
        Eigen::VectorXd d = -g;
        std::vector<double> alpha(mem.size());
        for (std::size_t i = mem.size(); i-- > 0;) {
            alpha[i] = mem[i].rho * mem[i].s.dot(d);
            d -= alpha[i] * mem[i].y;
        }
        d *= h0;
        for (std::size_t i = 0; i < mem.size(); ++i) {
            const double beta = mem[i].rho * mem[i].y.dot(d);
            d += (alpha[i] - beta) * mem[i].s;
        }

        double dg = d.dot(g);
        if (!(dg < 0.0)) {  // not a descent direction: reset
            mem.clear();
            d = -g;
            dg = d.dot(g);
            h0 = 1.0;
        }

        // backtracking Armijo with a roundoff allowance: near the minimum the
        // true decrease sinks below the evaluation noise of f, so accept any
        // step that does not measurably increase it
        double t = (it == 0 && mem.empty()) ? std::min(1.0, 1.0 / gnorm) : 1.0;
        const double c1 = 1e-4;
        const double f_noise = 4.0 * std::numeric_limits<double>::epsilon() * std::abs(f);
        double f_new = 0.0;
        Eigen::VectorXd z_new;
        bool ok = false;
        for (int ls = 0; ls < 40; ++ls) {
            z_new = z + t * d;
            f_new = fg(z_new, g_new);
            if (std::isfinite(f_new) && f_new <= f + c1 * t * dg + f_noise) {
                ok = true;
                break;
            }
            t *= 0.5;
        }
        if (!ok) {
            if (!mem.empty() && !restarted) {  // retry once as steepest descent
                mem.clear();
                h0 = 1.0;
                restarted = true;
                continue;
            }
            break;  // stalled at roundoff
        }
        restarted = false;

        Eigen::VectorXd s = z_new - z;
        Eigen::VectorXd yv = g_new - g;
        const double sy = s.dot(yv);
        if (sy > 1e-12 * s.norm() * yv.norm()) {
            mem.push_back({std::move(s), std::move(yv), 1.0 / sy});
            if (static_cast<int>(mem.size()) > opt.memory) mem.pop_front();
            h0 = sy / mem.back().y.squaredNorm();
        }
        z = std::move(z_new);
        f = f_new;
        g = g_new;
    }

    res.z = std::move(z);
    res.value = f;
    res.grad_norm = g.lpNorm<Eigen::Infinity>();
    res.iterations = it;
    if (res.grad_norm < opt.gtol) res.converged = true;
    return res;
}

} // namespace ioncav
