#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ioncav/cavity.hpp"
#include "ioncav/potential.hpp"
#include "ioncav/softmode.hpp"
#include "ioncav/sweep.hpp"
#include "oracles.hpp"

using namespace ioncav;

namespace {

// Compact chain with the standing-wave and envelope scales of the production
// scenario but cheap enough for unit tests.
NaturalParams small_chain(int n, double coop_target) {
    NaturalParams p;
    p.n = n;
    p.at = 4.6;
    p.kappa = 5.0;
    p.gamma = 0.0;
    p.delta0 = 5000.0;
    p.delta_c = 0.0;
    p.k = 40.0;
    p.sigma = 3.0;
    p.y0 = 0.0;
    p.eps = 1e-4;
    p.gamma_m = 1e-3;
    // fix g0 from the requested cooperativity of the linear chain
    NaturalParams q = p;
    q.g0 = 1.0;
    q.eta = 0.0;
    const IonConfiguration lin = linear_chain_equilibrium(q);
    const double n_eff = effective_ion_number(p, lin.y);
    p.g0 = std::sqrt(coop_target * p.kappa * p.delta0 / n_eff);
    p.eta = 0.0;
    return p;
}

} // namespace

TEST_CASE("uniform soft mode potential") {
    NaturalParams p = small_chain(5, 2.0);
    p.at = 5.0;
    const UniformSoftMode m = uniform_soft_mode(p, 5);
    CHECK(m.omega_s > 0.0);

    SUBCASE("no pump: pure parabola") {
        NaturalParams q = p;
        q.eta = 0.0;
        CHECK(soft_mode_potential_uniform(q, m, 0.0) == 0.0);
        const double xs = 0.37;
        CHECK(soft_mode_potential_uniform(q, m, xs) ==
              doctest::Approx(0.5 * m.omega_s * m.omega_s * xs * xs).epsilon(1e-14));
        // single minimum at the origin
        CHECK(soft_mode_potential_uniform(q, m, 0.0) <
              soft_mode_potential_uniform(q, m, 0.05));
    }
    SUBCASE("origin value is the arctan of the cooperativity") {
        NaturalParams q = p.with_pump_power(3.0);
        CHECK(soft_mode_potential_uniform(q, m, 0.0) ==
              doctest::Approx(q.eps * q.eta * q.eta / q.kappa * std::atan(m.coop))
                  .epsilon(1e-14));
    }
    SUBCASE("domain error below the critical point") {
        NaturalParams q = p;
        q.at = 1.0;
        CHECK_THROWS_AS(uniform_soft_mode(q, 5), ParamError);
    }
}

TEST_CASE("instability threshold") {
    NaturalParams base = small_chain(5, 1.0);
    base.at = 5.0;
    base.eta = 1.0;

    SUBCASE("analytic vs curvature crossing, several cooperativities") {
        for (double coop : {0.5, 1.0, 2.0, 3.0}) {
            NaturalParams p = base;
            UniformSoftMode m = uniform_soft_mode(p, 5);
            m.coop = coop;  // scan the model over C directly
            const ThresholdResult t = instability_threshold(p, m);
            CHECK(t.relative_gap < 0.01);
        }
    }
    SUBCASE("curvature flips sign exactly at the threshold") {
        NaturalParams p = base;
        const UniformSoftMode m = uniform_soft_mode(p, 5);
        const ThresholdResult t = instability_threshold(p, m);
        auto curvature_sign = [&](double eta) {
            NaturalParams q = p;
            q.eta = eta;
            const double h = 1e-4 / p.k;
            const double c = soft_mode_potential_uniform(q, m, h) -
                             2.0 * soft_mode_potential_uniform(q, m, 0.0) +
                             soft_mode_potential_uniform(q, m, -h);
            return c > 0.0;
        };
        CHECK(curvature_sign(0.99 * t.eta_th));
        CHECK(!curvature_sign(1.01 * t.eta_th));
    }
    SUBCASE("prefactor is minimized at unit cooperativity") {
        NaturalParams p = base;
        UniformSoftMode m = uniform_soft_mode(p, 5);
        auto threshold_sq = [&](double coop) {
            UniformSoftMode mm = m;
            mm.coop = coop;
            const ThresholdResult t = instability_threshold(p, mm);
            return t.eta_th * t.eta_th;
        };
        const double at_one = threshold_sq(1.0);
        // eta_th^2 / (omega_s^2 kappa / omega_R) = N (1+C^2)/(4C), minimal N/2 at C=1
        CHECK(at_one == doctest::Approx(0.5 * m.n * m.omega_s * m.omega_s * p.kappa /
                                        p.recoil())
                            .epsilon(1e-10));
        for (double coop : {0.3, 0.7, 1.5, 3.0})
            CHECK(threshold_sq(coop) > at_one);
    }
    SUBCASE("vanishing cooperativity diverges") {
        NaturalParams p = base;
        UniformSoftMode m = uniform_soft_mode(p, 5);
        m.coop = 1e-6;
        const ThresholdResult t = instability_threshold(p, m);
        m.coop = 1.0;
        CHECK(t.eta_th > 100.0 * instability_threshold(p, m).eta_th);
    }
}

TEST_CASE("finite-chain soft mode section") {
    NaturalParams p = small_chain(6, 2.0);

    Eigen::VectorXd grid(201);
    for (int i = 0; i < 201; ++i) grid[i] = (-1.0 + 2.0 * i / 200.0) * 3.2 / p.k;

    SUBCASE("no pump: single minimum at the origin") {
        NaturalParams q = p;
        q.eta = 0.0;
        const IonConfiguration lin = linear_chain_equilibrium(q);
        const SoftModeCurve c = soft_mode_potential_finite(q, lin, grid);
        CHECK(c.minima.size() == 1);
        CHECK(std::abs(grid[c.minima[0]]) < 1e-12);
        CHECK(c.lowest_transverse_eigenvalue > 0.0);
    }
    SUBCASE("central ion carries the largest soft-mode amplitude") {
        NaturalParams q = p;
        q.eta = 0.0;
        const IonConfiguration lin = linear_chain_equilibrium(q);
        const SoftModeCurve c = soft_mode_potential_finite(q, lin, grid);
        CHECK((c.central_ion == 2 || c.central_ion == 3));
    }
}

TEST_CASE("hysteresis sweep") {
    SUBCASE("negligible cooperativity: no bistable window") {
        const NaturalParams p = small_chain(6, 0.05);
        const SweepResult up = hysteresis_sweep(p, 1.0, 60.0, 25, SweepDirection::Up, 3);
        const SweepResult dn = hysteresis_sweep(p, 1.0, 60.0, 25, SweepDirection::Down, 4);
        const BistableWindow w = find_bistable_window(up, dn);
        CHECK(!w.nonempty);
        for (std::size_t i = 0; i < up.points.size(); ++i) {
            CHECK(up.points[i].ok);
            CHECK(std::abs(up.points[i].i_out - dn.points[i].i_out) /
                      std::max(up.points[i].i_out, 1e-300) <
                  1e-6);
        }
    }
    SUBCASE("linear branch intensity grows linearly in pump power") {
        const NaturalParams p = small_chain(6, 0.05);
        const SweepResult up = hysteresis_sweep(p, 1.0, 40.0, 14, SweepDirection::Up, 3);
        for (std::size_t i = 0; i + 1 < up.points.size(); ++i) {
            CHECK(up.points[i + 1].i_out > up.points[i].i_out);
            CHECK(up.points[i].i_out / up.i_ref ==
                  doctest::Approx(up.points[i].pump_power).epsilon(1e-6));
        }
    }
    SUBCASE("every accepted point is idempotent under re-minimization") {
        const NaturalParams p = small_chain(5, 2.0);
        const SweepResult up = hysteresis_sweep(p, 1.0, 50.0, 9, SweepDirection::Up, 3);
        for (const SweepPoint& pt : up.points) {
            REQUIRE(pt.ok);
            const NaturalParams q = p.with_pump_power(pt.pump_power);
            const EquilibriumResult again = find_equilibrium(q, pt.config);
            CHECK(std::abs(again.energy - total_potential(q, pt.config)) < 1e-12);
        }
    }
    SUBCASE("input validation") {
        const NaturalParams p = small_chain(4, 1.0);
        CHECK_THROWS_AS(hysteresis_sweep(p, 0.0, 10.0, 1, SweepDirection::Up),
                        ParamError);
        CHECK_THROWS_AS(hysteresis_sweep(p, 10.0, 10.0, 5, SweepDirection::Up),
                        ParamError);
    }
}
