#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ioncav/configuration.hpp"
#include "ioncav/equilibrium.hpp"
#include "ioncav/params.hpp"

namespace ioncav {

enum class SweepDirection { Up, Down };

struct SweepPoint {
    double pump_power = 0.0;
    double i_out = 0.0;       // natural units (2 kappa nbar)
    ChainLabel label = ChainLabel::Other;
    bool ok = false;          // converged to a verified minimum
    double grad_norm = 0.0;
    double lowest_eigenvalue = 0.0;
    IonConfiguration config;
};

struct SweepResult {
    SweepDirection direction = SweepDirection::Up;
    std::vector<SweepPoint> points;  // ordered by pump power ascending
    double i_ref = 0.0;              // I_out of the linear branch at P = 1
};

struct BistableWindow {
    bool nonempty = false;
    double p_lo = 0.0, p_hi = 0.0;
    int count = 0;
};

/// Warm-started equilibrium sequence over a pump-power grid. Each step seeds
/// from the previous configuration plus transverse noise of amplitude 1e-4
/// (fixed RNG seed) so an unstable branch is actually left.
SweepResult hysteresis_sweep(const NaturalParams& p, double p_min, double p_max,
                             int steps, SweepDirection dir, std::uint64_t seed = 0,
                             const MinimizeOptions& opt = {});

/// I_out of the stationary linear chain at pump power P.
double linear_branch_iout(const NaturalParams& p, double pump_power);

/// Grid points where the up branch is linear and the down branch zigzag, both
/// verified minima.
BistableWindow find_bistable_window(const SweepResult& up, const SweepResult& down);

} // namespace ioncav
