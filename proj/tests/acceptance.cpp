// Acceptance suite: end-to-end checks of the physics pipeline against
// closed-form oracles and the published scenario values, one line per
// criterion. Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ioncav/cavity.hpp"
#include "ioncav/entanglement.hpp"
#include "ioncav/equilibrium.hpp"
#include "ioncav/langevin.hpp"
#include "ioncav/lyapunov.hpp"
#include "ioncav/modes.hpp"
#include "ioncav/potential.hpp"
#include "ioncav/runconfig.hpp"
#include "ioncav/softmode.hpp"
#include "ioncav/spectrum.hpp"
#include "ioncav/sweep.hpp"
#include "oracles.hpp"

using namespace ioncav;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

const std::string config_dir = std::string(IONCAV_SOURCE_DIR) + "/configs/";

struct Criterion {
    int id;
    std::string name;
    double budget_s;
    bool pass = true;
    std::ostringstream detail;
    double elapsed_s = 0.0;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [FAILED: " << what << "]";
        }
    }
};

// Steady covariances produced anywhere in the run, checked at the end.
struct SigmaCheck {
    std::string origin;
    double residual;
    double physicality;
};
std::vector<SigmaCheck> g_sigma_checks;

MatrixXd checked_covariance(const GaussianSteadyState& sys, const std::string& origin) {
    const MatrixXd sigma = solve_lyapunov(sys.drift, sys.diffusion);
    g_sigma_checks.push_back({origin, lyapunov_residual(sys.drift, sys.diffusion, sigma),
                              physicality_margin(sigma)});
    return sigma;
}

struct Pipeline {
    EquilibriumResult eq;
    MeanFieldState mf;
    NormalModes modes;
    GaussianSteadyState sys;
};

Pipeline run_pipeline(const ResolvedModel& rm) {
    Pipeline fp;
    const NaturalParams& q = rm.structure_natural;
    fp.eq = find_equilibrium(q, zigzag_guess(q, rm.linear));
    fp.mf = mean_field(rm.natural, fp.eq.config);
    fp.modes = normal_modes(rm.natural, fp.eq.config);
    fp.sys = drift_diffusion(rm.natural, fp.mf, fp.modes, rm.config.coupling_floor);
    return fp;
}

// --- criterion 1: free-space three-ion oracles ------------------------------

void criterion_free_space(Criterion& c) {
    NaturalParams p = oracles::synthetic_params(3);
    p.eta = 0.0;
    p.at = 3.0;

    IonConfiguration guess;
    guess.x = VectorXd::Zero(3);
    guess.y.resize(3);
    guess.y << -1.0, 0.0, 1.0;
    MinimizeOptions opt;
    opt.gtol = 1e-12;
    const EquilibriumResult eq = find_equilibrium(p, guess, opt);
    c.require(eq.converged && eq.is_minimum, "three-ion equilibrium not found");
    const double d = oracles::three_ion_spacing();
    const double spacing = 0.5 * (eq.config.y[2] - eq.config.y[0]);
    c.require(std::abs(spacing - d) / d < 1e-10, "equilibrium spacing (5/4)^(1/3)");
    c.detail << "spacing rel err " << std::abs(spacing - d) / d;

    const NormalModes m = normal_modes(p, eq.config);
    std::vector<double> expected{1.0,
                                 oracles::three_ion_axial_breathing(),
                                 oracles::three_ion_axial_egyptian(),
                                 std::sqrt(oracles::three_ion_zigzag_sq(p.at)),
                                 std::sqrt(p.at * p.at - 1.0),
                                 p.at};
    std::sort(expected.begin(), expected.end());
    double worst = 0.0;
    for (int i = 0; i < 6; ++i)
        worst = std::max(worst, std::abs(m.omega[i] - expected[i]) / expected[i]);
    c.require(worst < 1e-10, "axial/transverse mode frequencies");
    c.detail << ", mode rel err " << worst;
}

// --- criterion 2: derivative consistency -------------------------------------

void criterion_derivatives(Criterion& c) {
    std::mt19937_64 rng(2024);
    double worst_g = 0.0, worst_h = 0.0, worst_id = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + trial % 7;
        NaturalParams p = oracles::synthetic_params(n);
        VectorXd x, y;
        oracles::random_configuration(rng, n, x, y);
        IonConfiguration cf;
        cf.x = x;
        cf.y = y;

        const VectorXd g = gradient(p, cf);
        const VectorXd g_fd = oracles::fd_gradient(
            [&](const VectorXd& z) { return total_potential(p, z); }, cf.packed(), 1e-5);
        worst_g = std::max(worst_g, (g - g_fd).lpNorm<Eigen::Infinity>() /
                                        g.lpNorm<Eigen::Infinity>());

        const MatrixXd h = hessian(p, cf);
        const MatrixXd h_fd = oracles::fd_jacobian(
            [&](const VectorXd& z) { return gradient(p, z); }, cf.packed(), 1e-5);
        worst_h =
            std::max(worst_h, (h - h_fd).cwiseAbs().maxCoeff() / h.cwiseAbs().maxCoeff());

        NaturalParams p0 = p;
        p0.eta = 0.0;
        const VectorXd cavity = gradient(p, cf) - gradient(p0, cf);
        VectorXd ux, uy;
        u0_gradient(p, cf.x, cf.y, ux, uy);
        VectorXd ref(2 * n);
        ref.head(n) = ux;
        ref.tail(n) = uy;
        ref *= p.eps * mean_field(p, cf).nbar;
        worst_id = std::max(worst_id, (cavity - ref).lpNorm<Eigen::Infinity>() /
                                          std::max(ref.lpNorm<Eigen::Infinity>(), 1e-30));
    }
    c.require(worst_g < 1e-6, "gradient finite differences");
    c.require(worst_h < 1e-6, "hessian finite differences");
    c.require(worst_id < 1e-12, "arctan-potential chain-rule identity");
    c.detail << "grad " << worst_g << ", hess " << worst_h << ", identity " << worst_id;
}

// --- criterion 3: effective ion number and cooperativity ---------------------

void criterion_neff(Criterion& c) {
    // published scenario geometry: 60-ion chain with 4.3 um spacing in the
    // illuminated central region, 14 um mode waist, chain on the antinodes
    NaturalParams p;
    p.n = 60;
    p.g0 = 94.0;
    p.kappa = 5.0;
    p.delta0 = 5000.0;
    p.k = 149.83;
    p.sigma = 14.0 / 4.3;  // waist over spacing
    p.y0 = 0.0;
    IonConfiguration chain;
    chain.x = VectorXd::Zero(60);
    chain.y.resize(60);
    for (int j = 0; j < 60; ++j) chain.y[j] = j - 29.5;
    const double n_eff = u0_shift(p, chain) * p.delta0 / (p.g0 * p.g0);
    const double coop = cooperativity(p, n_eff);
    c.require(n_eff >= 5.6 && n_eff <= 5.9, "N_eff within [5.6, 5.9]");
    c.require(coop >= 1.95 && coop <= 2.05, "C within [1.95, 2.05]");
    c.detail << "N_eff " << n_eff << ", C " << coop;

    // supplementary: the same waist over the self-consistent harmonic chain
    const RunConfig rc = load_config(config_dir + "chain60_bistable.cfg");
    const ResolvedModel rm = resolve(rc);
    c.detail << " (harmonic-chain N_eff " << rm.n_eff << ")";
}

// --- criterion 4: critical transverse frequency ------------------------------

void criterion_critical_frequency(Criterion& c) {
    const RunConfig rc = load_config(config_dir + "chain60_bistable.cfg");
    const ResolvedModel rm = resolve(rc);
    NaturalParams p = rm.natural;
    p.eta = 0.0;
    const double atc = critical_frequency(p, 60);
    const double f_mhz = atc * rc.omega_a_mhz;
    c.require(f_mhz >= 2.21 && f_mhz <= 2.22, "omega_tc/2pi within [2.21, 2.22] MHz");
    c.detail << "omega_tc/2pi " << f_mhz << " MHz";
}

// --- criterion 5: soft-mode instability threshold ----------------------------

void criterion_threshold(Criterion& c) {
    const RunConfig rc = load_config(config_dir + "chain60_bistable.cfg");
    const ResolvedModel rm = resolve(rc);
    const UniformSoftMode base = uniform_soft_mode(rm.natural, 60);
    double worst = 0.0;
    for (double coop : {0.5, 1.0, 2.0, 3.0}) {
        UniformSoftMode m = base;
        m.coop = coop;
        const ThresholdResult t = instability_threshold(rm.natural, m);
        worst = std::max(worst, t.relative_gap);
    }
    c.require(worst < 0.01, "analytic vs numeric threshold gap < 1%");
    c.detail << "max rel gap " << worst << ", omega_s " << base.omega_s;
}

// --- criterion 6: bistability and hysteresis ---------------------------------

SoftModeCurve section(const NaturalParams& p, double pump) {
    const NaturalParams q = p.with_pump_power(pump);
    const IonConfiguration lin = linear_chain_equilibrium(q);
    VectorXd grid(481);
    for (int i = 0; i < 481; ++i) grid[i] = (-1.0 + 2.0 * i / 480.0) * 3.2 / p.k;
    return soft_mode_potential_finite(q, lin, grid);
}

int section_minima(const NaturalParams& p, double pump) {
    return static_cast<int>(section(p, pump).minima.size());
}

void criterion_bistability(Criterion& c) {
    const RunConfig rc = load_config(config_dir + "chain60_bistable.cfg");
    const ResolvedModel rm = resolve(rc);
    const NaturalParams& p = rm.natural;

    const SweepResult up = hysteresis_sweep(p, 0.0, 300.0, 201, SweepDirection::Up, 1);
    const SweepResult dn = hysteresis_sweep(p, 0.0, 300.0, 201, SweepDirection::Down, 2);
    const BistableWindow w = find_bistable_window(up, dn);
    c.require(w.nonempty, "bistable window exists");
    if (!w.nonempty) return;

    bool verified = true, brighter = true;
    for (std::size_t i = 0; i < up.points.size(); ++i) {
        if (up.points[i].pump_power < w.p_lo || up.points[i].pump_power > w.p_hi)
            continue;
        if (up.points[i].label != ChainLabel::Linear ||
            dn.points[i].label != ChainLabel::Zigzag)
            continue;
        verified = verified && up.points[i].ok && dn.points[i].ok;
        brighter = brighter && dn.points[i].i_out > up.points[i].i_out;
    }
    c.require(verified, "window structures are verified minima");
    c.require(brighter, "zigzag branch brighter than linear");
    c.detail << "window [" << w.p_lo << ", " << w.p_hi << "] (" << w.count << " pts)";

    int three = 0;
    bool inside_nodes = true;
    std::ostringstream counts;
    for (double pump : {130.0, 160.0, 190.0}) {
        const SoftModeCurve s = section(p, pump);
        counts << " " << s.minima.size();
        if (s.minima.size() == 3) {
            ++three;
            // outer wells must sit inside the first standing-wave nodes
            for (int idx : s.minima)
                inside_nodes = inside_nodes &&
                               std::abs(s.displacement[idx]) * p.k < 0.5 * constants::pi;
        }
    }
    c.require(three >= 1, "three minima at one of P = 130/160/190");
    c.require(inside_nodes, "outer minima inside |kx| < pi/2");
    c.detail << ", section minima" << counts.str();

    // window edges bracket the section-count transitions
    const int below = section_minima(p, w.p_lo - 10.0);
    const int above = section_minima(p, w.p_hi + 10.0);
    c.require(below == 1, "single minimum below the window");
    c.require(above == 2, "two minima above the window");
}

// --- criterion 7: spectrum cross-validation and lineshapes --------------------

struct SpectrumRun {
    double max_rel = 0.0;
    bool fano = false;
};

SpectrumRun spectrum_case(const std::string& config, const std::string& origin) {
    const RunConfig rc = load_config(config_dir + config);
    const ResolvedModel rm = resolve(rc);
    const Pipeline fp = run_pipeline(rm);

    VectorXd nu(1000);
    for (int i = 0; i < 1000; ++i) nu[i] = -3.0 + 6.0 * i / 999.0;
    const VectorXd sa = output_spectrum_analytic(fp.sys, nu);
    const VectorXd sn = output_spectrum_numeric(fp.sys, nu);
    SpectrumRun out;
    for (int i = 0; i < 1000; ++i) {
        const double den = std::max(std::abs(sa[i]), std::abs(sn[i]));
        if (den > 0.0) out.max_rel = std::max(out.max_rel, std::abs(sa[i] - sn[i]) / den);
    }

    const int nf = 24001;
    VectorXd nuf(nf);
    for (int i = 0; i < nf; ++i) nuf[i] = -3.0 + 6.0 * i / (nf - 1.0);
    const VectorXd sf = output_spectrum_analytic(fp.sys, nuf);
    out.fano = fano_signature(fp.sys, nuf, sf).found;

    checked_covariance(fp.sys, origin);
    return out;
}

void criterion_spectra(Criterion& c) {
    const SpectrumRun weak = spectrum_case("chain3_lowC.cfg", "spectrum weak coupling");
    const SpectrumRun strong = spectrum_case("chain3_highC.cfg", "spectrum strong coupling");
    c.require(weak.max_rel < 1e-6, "weak-coupling spectra agree to 1e-6");
    c.require(strong.max_rel < 1e-6, "strong-coupling spectra agree to 1e-6");
    c.require(strong.fano, "strong coupling shows a Fano peak-dip");
    c.require(!weak.fano, "weak coupling stays Lorentzian");
    c.detail << "rel diff weak " << weak.max_rel << ", strong " << strong.max_rel
             << "; fano weak/strong " << weak.fano << "/" << strong.fano;
}

// --- criterion 8: entanglement ------------------------------------------------

void criterion_entanglement(Criterion& c) {
    const double r = 0.7;
    const double en_tms = log_negativity(oracles::two_mode_squeezed(r), 1);
    const double expected = 2.0 * r / std::log(2.0);
    c.require(std::abs(en_tms - expected) / expected < 1e-10,
              "two-mode squeezed oracle E_N = 2r/ln 2");

    const RunConfig rc = load_config(config_dir + "chain3_highC.cfg");
    const ResolvedModel rm = resolve(rc);
    const Pipeline fp = run_pipeline(rm);
    const MatrixXd sigma = checked_covariance(fp.sys, "entanglement steady state");
    const double en = log_negativity(sigma, 1);
    c.require(en > 0.0, "steady-state entanglement present");
    c.require(en >= 0.05 && en <= 0.25, "E_N within the calibration band [0.05, 0.25]");
    c.detail << "tms rel err " << std::abs(en_tms - expected) / expected << ", E_N " << en
             << " (target 0.15, deviation " << en - 0.15 << ")";
}

// --- criterion 9: physicality of every steady state ---------------------------

void criterion_physicality(Criterion& c) {
    c.require(!g_sigma_checks.empty(), "steady states were produced");
    double worst_res = 0.0, worst_phys = 0.0;
    for (const SigmaCheck& s : g_sigma_checks) {
        worst_res = std::max(worst_res, s.residual);
        worst_phys = std::min(worst_phys, s.physicality);
        if (s.residual >= 1e-10) c.require(false, s.origin + ": residual");
        if (s.physicality <= -1e-9) c.require(false, s.origin + ": physicality");
    }
    c.detail << g_sigma_checks.size() << " covariances, max residual " << worst_res
             << ", min margin of Sigma + i Omega/2: " << worst_phys;
}

} // namespace

int main() {
    struct Entry {
        int id;
        const char* name;
        double budget;
        void (*fn)(Criterion&);
    };
    const std::vector<Entry> entries{
        {1, "free-space three-ion oracles", 1.0, criterion_free_space},
        {2, "gradient/hessian finite-difference suite", 30.0, criterion_derivatives},
        {3, "effective ion number and cooperativity", 10.0, criterion_neff},
        {4, "critical transverse frequency (60 ions)", 120.0, criterion_critical_frequency},
        {5, "soft-mode instability threshold", 10.0, criterion_threshold},
        {6, "bistability and hysteresis", 1200.0, criterion_bistability},
        {7, "output-spectrum cross-validation and Fano contrast", 60.0, criterion_spectra},
        {8, "steady-state entanglement", 60.0, criterion_entanglement},
        {9, "covariance physicality and Lyapunov residuals", 60.0, criterion_physicality},
    };

    int failures = 0;
    for (const Entry& e : entries) {
        Criterion c{e.id, e.name, e.budget};
        const auto t0 = std::chrono::steady_clock::now();
        try {
            e.fn(c);
        } catch (const std::exception& ex) {
            c.require(false, std::string("exception: ") + ex.what());
        }
        c.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                          .count();
        if (c.elapsed_s > c.budget_s) c.require(false, "over the runtime budget");
        if (!c.pass) ++failures;
        std::printf("[%s] criterion %d: %s — %s (%.2f s, budget %.0f s)\n",
                    c.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                    c.detail.str().c_str(), c.elapsed_s, c.budget_s);
        std::fflush(stdout);
    }
    if (failures == 0)
        std::printf("acceptance: all %zu criteria passed\n", entries.size());
    else
        std::printf("acceptance: %d criteria FAILED\n", failures);
    return failures;
}
