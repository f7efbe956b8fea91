#include "ioncav/sweep.hpp"

#include <algorithm>
#include <random>

#include "ioncav/cavity.hpp"
#include "ioncav/potential.hpp"

namespace ioncav {

namespace {
constexpr double sweep_noise_amp = 1e-4;
} // namespace

double linear_branch_iout(const NaturalParams& p, double pump_power) {
    const NaturalParams q = p.with_pump_power(pump_power);
    const IonConfiguration lin = linear_chain_equilibrium(q);
    return mean_field(q, lin).i_out;
}

SweepResult hysteresis_sweep(const NaturalParams& p, double p_min, double p_max,
                             int steps, SweepDirection dir, std::uint64_t seed,
                             const MinimizeOptions& opt) {
    if (steps < 2) throw ParamError("hysteresis_sweep: needs at least 2 steps");
    if (!(p_max > p_min)) throw ParamError("hysteresis_sweep: p_max must exceed p_min");

    std::vector<double> grid(steps);
    for (int i = 0; i < steps; ++i)
        grid[i] = p_min + (p_max - p_min) * i / (steps - 1);

    SweepResult res;
    res.direction = dir;
    res.points.resize(steps);
    res.i_ref = linear_branch_iout(p, 1.0);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    const double p_start = dir == SweepDirection::Up ? grid.front() : grid.back();
    const NaturalParams q_start = p.with_pump_power(p_start);
    IonConfiguration prev;
    if (dir == SweepDirection::Up) {
        prev = linear_chain_equilibrium(q_start);
    } else {
        const IonConfiguration lin = linear_chain_equilibrium(q_start);
        prev = find_equilibrium(q_start, zigzag_guess(q_start, lin), opt).config;
    }

    for (int step = 0; step < steps; ++step) {
        const int i = dir == SweepDirection::Up ? step : steps - 1 - step;
        const NaturalParams q = p.with_pump_power(grid[i]);

        IonConfiguration guess = prev;
        for (int j = 0; j < guess.n(); ++j) guess.x[j] += sweep_noise_amp * gauss(rng);

        SweepPoint& pt = res.points[i];
        pt.pump_power = grid[i];
        try {
            EquilibriumResult eq = find_equilibrium(q, guess, opt);
            pt.config = eq.config;
            pt.label = eq.config.label;
            pt.grad_norm = eq.grad_norm;
            pt.lowest_eigenvalue = eq.lowest_eigenvalue;
            pt.ok = eq.converged && eq.is_minimum;
            pt.i_out = mean_field(q, eq.config).i_out;
            if (pt.ok) prev = eq.config;
        } catch (const std::exception&) {
            pt.ok = false;  // annotated failure; sweep continues from last good point
        }
    }
    return res;
}

BistableWindow find_bistable_window(const SweepResult& up, const SweepResult& down) {
    BistableWindow w;
    const std::size_t n = std::min(up.points.size(), down.points.size());
    for (std::size_t i = 0; i < n; ++i) {
        const SweepPoint& u = up.points[i];
        const SweepPoint& d = down.points[i];
        if (u.ok && d.ok && u.label == ChainLabel::Linear &&
            d.label == ChainLabel::Zigzag) {
            if (!w.nonempty) {
                w.nonempty = true;
                w.p_lo = u.pump_power;
            }
            w.p_hi = u.pump_power;
            ++w.count;
        }
    }
    return w;
}

} // namespace ioncav
