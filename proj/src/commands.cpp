#include "ioncav/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "ioncav/cavity.hpp"
#include "ioncav/entanglement.hpp"
#include "ioncav/equilibrium.hpp"
#include "ioncav/lyapunov.hpp"
#include "ioncav/potential.hpp"
#include "ioncav/softmode.hpp"
#include "ioncav/spectrum.hpp"
#include "ioncav/sweep.hpp"
#include "ioncav/table.hpp"

namespace ioncav {

namespace {

constexpr const char* version_string = "ioncav 0.1.0";
constexpr double negativity_target = 0.15;

std::string out_path(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / name).string();
}

void write_diagnostic(const std::string& dir, const std::string& name,
                      const std::string& text) {
    std::ofstream f(out_path(dir, name), std::ios::trunc);
    f << text;
}

std::string label_str(ChainLabel l) { return to_string(l); }

double central_spacing(const IonConfiguration& c) {
    const int n = c.n();
    if (n < 2) return 0.0;
    const int j = (n - 1) / 2;
    return c.y[j + 1] - c.y[j];
}

std::string hash_hex(const RunConfig& rc) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "0x%016llx",
                  static_cast<unsigned long long>(config_hash(rc)));
    return buf;
}

void common_meta(ResultTable& t, const RunConfig& rc, const ResolvedModel& rm) {
    t.meta("config-hash", hash_hex(rc));
    t.meta("length-unit-um", ResultTable::num(rm.ell * 1e6));
    t.meta("seed", std::to_string(rc.seed));
}

/// Relax the structural configuration under the structure parameter set.
EquilibriumResult relax_structure(const ResolvedModel& rm, const std::string& out_dir) {
    const NaturalParams& q = rm.structure_natural;
    const IonConfiguration guess =
        rm.config.structure_seed_zigzag ? zigzag_guess(q, rm.linear) : rm.linear;
    EquilibriumResult eq = find_equilibrium(q, guess);
    if (rm.config.structure_seed_zigzag && eq.converged &&
        eq.config.label != ChainLabel::Zigzag && q.k > 0.0) {
        // Inside a bistable window the small seed can decay back onto the
        // linear branch; retry from the standing-wave node scale where the
        // zigzag wells live.
        IonConfiguration wide = rm.linear;
        const double amp = 0.4 * constants::pi / q.k;
        for (int j = 0; j < wide.n(); ++j) wide.x[j] += (j % 2 == 0 ? amp : -amp);
        const EquilibriumResult retry = find_equilibrium(q, wide);
        if (retry.converged && retry.is_minimum &&
            retry.config.label == ChainLabel::Zigzag)
            eq = retry;
    }
    if (!eq.converged || !eq.is_minimum) {
        std::ostringstream d;
        d << "equilibrium search failed\n"
          << "converged = " << eq.converged << "\n"
          << "is_minimum = " << eq.is_minimum << "\n"
          << "grad_norm = " << eq.grad_norm << "\n"
          << "lowest_eigenvalue = " << eq.lowest_eigenvalue << "\n"
          << "iterations = " << eq.iterations << "\n";
        write_diagnostic(out_dir, "equilibrium_failure.txt", d.str());
        throw SolverError(eq.converged ? "converged to a saddle"
                                       : "equilibrium solver did not converge");
    }
    return eq;
}

struct FluctuationPipeline {
    EquilibriumResult eq;
    MeanFieldState mf;
    NormalModes modes;
    GaussianSteadyState sys;
};

FluctuationPipeline fluctuation_pipeline(const ResolvedModel& rm,
                                         const std::string& out_dir) {
    FluctuationPipeline fp{relax_structure(rm, out_dir), {}, {}, {}};
    fp.mf = mean_field(rm.natural, fp.eq.config);
    fp.modes = normal_modes(rm.natural, fp.eq.config);
    fp.sys = drift_diffusion(rm.natural, fp.mf, fp.modes, rm.config.coupling_floor);
    return fp;
}

template <typename Fn>
void parallel_chunks(int threads, Eigen::Index n, Fn&& fn) {
    if (threads <= 1 || n < 64) {
        fn(0, n);
        return;
    }
    std::vector<std::future<void>> futs;
    const Eigen::Index chunk = (n + threads - 1) / threads;
    for (Eigen::Index lo = 0; lo < n; lo += chunk)
        futs.push_back(std::async(std::launch::async, [&fn, lo, n, chunk] {
            fn(lo, std::min(lo + chunk, n));
        }));
    for (auto& f : futs) f.get();
}

} // namespace

void cmd_equilibrium(const RunConfig& rc, const std::string& out_dir) {
    const ResolvedModel rm = resolve(rc);
    const EquilibriumResult eq = relax_structure(rm, out_dir);
    const MeanFieldState mf = mean_field(rm.natural, eq.config);
    const std::string cfg = serialize_config(rc);

    ResultTable pos({"ion", "x", "y", "x_nat", "y_nat"}, {"-", "um", "um", "ell", "ell"});
    common_meta(pos, rc, rm);
    pos.meta("label", label_str(eq.config.label));
    const double um = rm.ell * 1e6;
    for (int j = 0; j < eq.config.n(); ++j)
        pos.add_row({std::to_string(j), ResultTable::num(eq.config.x[j] * um),
                     ResultTable::num(eq.config.y[j] * um),
                     ResultTable::num(eq.config.x[j]), ResultTable::num(eq.config.y[j])});
    pos.write(out_path(out_dir, "equilibrium_positions.tsv"), version_string, cfg);

    const Eigen::MatrixXd h = hessian(rm.structure_natural, eq.config);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
    ResultTable spec({"index", "eigenvalue", "frequency"}, {"-", "m w_a^2", "MHz"});
    common_meta(spec, rc, rm);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double ev = es.eigenvalues()[i];
        const double f = ev > 0.0 ? std::sqrt(ev) * rc.omega_a_mhz : 0.0;
        spec.add_row({std::to_string(i), ResultTable::num(ev), ResultTable::num(f)});
    }
    spec.write(out_path(out_dir, "equilibrium_hessian_spectrum.tsv"), version_string, cfg);

    ResultTable rep({"label", "converged", "grad_norm", "energy", "lowest_eig",
                     "central_spacing", "n_eff", "u0", "nbar", "i_out",
                     "dispersive_margin", "iterations", "escape_rounds"},
                    {"-", "-", "nat", "nat", "nat", "um", "-", "w_a", "-", "1/s", "-",
                     "-", "-"});
    common_meta(rep, rc, rm);
    rep.add_row({label_str(eq.config.label), eq.converged ? "1" : "0",
                 ResultTable::num(eq.grad_norm), ResultTable::num(eq.energy),
                 ResultTable::num(eq.lowest_eigenvalue),
                 ResultTable::num(central_spacing(eq.config) * um),
                 ResultTable::num(rm.n_eff), ResultTable::num(mf.u0),
                 ResultTable::num(mf.nbar),
                 ResultTable::num(mf.i_out * rm.physical.omega_a),
                 ResultTable::num(mf.dispersive_margin), std::to_string(eq.iterations),
                 std::to_string(eq.escape_rounds)});
    rep.write(out_path(out_dir, "equilibrium_report.tsv"), version_string, cfg);
}

void cmd_sweep(const RunConfig& rc, const std::string& out_dir) {
    const ResolvedModel rm = resolve(rc);
    const std::string cfg = serialize_config(rc);
    const NaturalParams& p = rm.natural;

    auto run_dir = [&](SweepDirection d, std::uint64_t seed) {
        // single-point range: one warm equilibrium per branch
        if (rc.sweep_points < 2 || rc.sweep_p_min == rc.sweep_p_max) {
            SweepResult r;
            r.direction = d;
            r.i_ref = linear_branch_iout(p, 1.0);
            const NaturalParams q = p.with_pump_power(rc.sweep_p_min);
            const IonConfiguration lin = linear_chain_equilibrium(q);
            const IonConfiguration guess =
                d == SweepDirection::Up ? lin : zigzag_guess(q, lin);
            const EquilibriumResult eq = find_equilibrium(q, guess);
            SweepPoint pt;
            pt.pump_power = rc.sweep_p_min;
            pt.config = eq.config;
            pt.label = eq.config.label;
            pt.grad_norm = eq.grad_norm;
            pt.lowest_eigenvalue = eq.lowest_eigenvalue;
            pt.ok = eq.converged && eq.is_minimum;
            pt.i_out = mean_field(q, eq.config).i_out;
            r.points.push_back(pt);
            return r;
        }
        return hysteresis_sweep(p, rc.sweep_p_min, rc.sweep_p_max, rc.sweep_points, d,
                                seed);
    };
    SweepResult up, down;
    if (rc.threads > 1) {
        auto fu = std::async(std::launch::async, run_dir, SweepDirection::Up, rc.seed);
        auto fd = std::async(std::launch::async, run_dir, SweepDirection::Down, rc.seed + 1);
        up = fu.get();
        down = fd.get();
    } else {
        up = run_dir(SweepDirection::Up, rc.seed);
        down = run_dir(SweepDirection::Down, rc.seed + 1);
    }

    auto emit = [&](const SweepResult& r, const std::string& name) {
        ResultTable t({"P", "i_over_i1", "i_out", "label", "ok", "lowest_eig",
                       "grad_norm"},
                      {"-", "-", "1/s", "-", "-", "nat", "nat"});
        common_meta(t, rc, rm);
        t.meta("direction", r.direction == SweepDirection::Up ? "up" : "down");
        t.meta("i1", ResultTable::num(r.i_ref * rm.physical.omega_a));
        for (const SweepPoint& pt : r.points)
            t.add_row({ResultTable::num(pt.pump_power),
                       ResultTable::num(pt.i_out / r.i_ref),
                       ResultTable::num(pt.i_out * rm.physical.omega_a),
                       label_str(pt.label), pt.ok ? "1" : "0",
                       ResultTable::num(pt.lowest_eigenvalue),
                       ResultTable::num(pt.grad_norm)});
        t.write(out_path(out_dir, name), version_string, cfg);
    };
    emit(up, "sweep_up.tsv");
    emit(down, "sweep_down.tsv");

    const BistableWindow w = find_bistable_window(up, down);
    bool zig_brighter = w.nonempty;
    if (w.nonempty)
        for (std::size_t i = 0; i < up.points.size(); ++i)
            if (up.points[i].label == ChainLabel::Linear &&
                down.points[i].label == ChainLabel::Zigzag &&
                down.points[i].i_out <= up.points[i].i_out)
                zig_brighter = false;
    ResultTable t({"nonempty", "p_lo", "p_hi", "points", "zigzag_brighter"},
                  {"-", "-", "-", "-", "-"});
    common_meta(t, rc, rm);
    t.add_row({w.nonempty ? "1" : "0", ResultTable::num(w.p_lo), ResultTable::num(w.p_hi),
               std::to_string(w.count), zig_brighter ? "1" : "0"});
    t.write(out_path(out_dir, "sweep_window.tsv"), version_string, cfg);
}

void cmd_softmode(const RunConfig& rc, const std::string& out_dir) {
    const ResolvedModel rm = resolve(rc);
    const std::string cfg = serialize_config(rc);
    std::vector<double> p_list = rc.softmode_p;
    if (p_list.empty()) p_list.push_back(rm.natural.pump_power());

    ResultTable summary({"P", "minima", "lowest_transverse_eig", "positions_kx"},
                        {"-", "-", "nat", "-"});
    common_meta(summary, rc, rm);

    Eigen::VectorXd grid(rc.softmode_points);
    for (int i = 0; i < rc.softmode_points; ++i)
        grid[i] = rc.softmode_x_max / rm.natural.k *
                  (-1.0 + 2.0 * i / (rc.softmode_points - 1));

    for (std::size_t ip = 0; ip < p_list.size(); ++ip) {
        const NaturalParams q = rm.natural.with_pump_power(p_list[ip]);
        const IonConfiguration lin = linear_chain_equilibrium(q);
        const SoftModeCurve curve = soft_mode_potential_finite(q, lin, grid);

        char name[64];
        std::snprintf(name, sizeof name, "softmode_P%g.tsv", p_list[ip]);
        ResultTable t({"kx", "x", "v"}, {"-", "um", "nat"});
        common_meta(t, rc, rm);
        t.meta("P", ResultTable::num(p_list[ip]));
        t.meta("central_ion", std::to_string(curve.central_ion));
        for (Eigen::Index i = 0; i < curve.displacement.size(); ++i)
            t.add_row({ResultTable::num(curve.displacement[i] * rm.natural.k),
                       ResultTable::num(curve.displacement[i] * rm.ell * 1e6),
                       ResultTable::num(curve.energy[i])});
        t.write(out_path(out_dir, name), version_string, cfg);

        std::ostringstream minpos;
        for (std::size_t i = 0; i < curve.minima.size(); ++i)
            minpos << (i ? "," : "")
                   << ResultTable::num(curve.displacement[curve.minima[i]] * rm.natural.k);
        summary.add_row({ResultTable::num(p_list[ip]),
                         std::to_string(curve.minima.size()),
                         ResultTable::num(curve.lowest_transverse_eigenvalue),
                         minpos.str().empty() ? "-" : minpos.str()});
    }
    summary.write(out_path(out_dir, "softmode_summary.tsv"), version_string, cfg);
}

namespace {

void emit_mode_table(const RunConfig& rc, const ResolvedModel& rm,
                     const FluctuationPipeline& fp, const std::string& out_dir,
                     const std::string& name) {
    const std::string cfg = serialize_config(rc);
    ResultTable t({"mode", "omega", "frequency", "c_n", "c_n_abar", "b_n0", "k_b_n0",
                   "gamma_n", "n_n"},
                  {"-", "w_a", "MHz", "w_a", "w_a", "ell", "-", "w_a", "-"});
    common_meta(t, rc, rm);
    t.meta("label", to_string(fp.eq.config.label));
    t.meta("u0", ResultTable::num(fp.mf.u0));
    t.meta("nbar", ResultTable::num(fp.mf.nbar));
    const double aa = std::abs(fp.mf.abar);
    for (int i = 0; i < fp.sys.n_modes(); ++i) {
        const int src = fp.sys.retained[i];
        t.add_row({std::to_string(src), ResultTable::num(fp.sys.omega[i]),
                   ResultTable::num(fp.sys.omega[i] * rc.omega_a_mhz),
                   ResultTable::num(fp.sys.coupling[i]),
                   ResultTable::num(fp.sys.coupling[i] * aa),
                   ResultTable::num(fp.modes.zero_point[src]),
                   ResultTable::num(rm.natural.k * fp.modes.zero_point[src]),
                   ResultTable::num(fp.sys.gamma[i]),
                   ResultTable::num(fp.sys.occupation[i])});
    }
    t.write(out_path(out_dir, name), version_string, cfg);
}

} // namespace

void cmd_modes(const RunConfig& rc, const std::string& out_dir) {
    const ResolvedModel rm = resolve(rc);
    const FluctuationPipeline fp = fluctuation_pipeline(rm, out_dir);
    emit_mode_table(rc, rm, fp, out_dir, "modes.tsv");

    const std::string cfg = serialize_config(rc);
    ResultTable m({"row", "values"}, {"-", "-"});
    common_meta(m, rc, rm);
    for (Eigen::Index i = 0; i < fp.modes.matrix.rows(); ++i) {
        std::ostringstream row;
        for (Eigen::Index j = 0; j < fp.modes.matrix.cols(); ++j)
            row << (j ? "," : "") << ResultTable::num(fp.modes.matrix(i, j));
        m.add_row({std::to_string(i), row.str()});
    }
    m.write(out_path(out_dir, "mode_matrix.tsv"), version_string, cfg);
}

void cmd_spectrum(const RunConfig& rc, const std::string& out_dir) {
    const ResolvedModel rm = resolve(rc);
    const FluctuationPipeline fp = fluctuation_pipeline(rm, out_dir);
    const std::string cfg = serialize_config(rc);

    Eigen::VectorXd nu(rc.spectrum_points);
    for (int i = 0; i < rc.spectrum_points; ++i)
        nu[i] = rc.spectrum_nu_min + (rc.spectrum_nu_max - rc.spectrum_nu_min) * i /
                                         (rc.spectrum_points - 1);

    const Eigen::VectorXd s_ana = output_spectrum_analytic(fp.sys, nu);
    Eigen::VectorXd s_num(nu.size());
    parallel_chunks(rc.threads, nu.size(), [&](Eigen::Index lo, Eigen::Index hi) {
        const Eigen::VectorXd chunk = nu.segment(lo, hi - lo);
        s_num.segment(lo, hi - lo) = output_spectrum_numeric(fp.sys, chunk);
    });

    double max_rel = 0.0;
    for (Eigen::Index i = 0; i < nu.size(); ++i) {
        const double den = std::max(std::abs(s_ana[i]), std::abs(s_num[i]));
        if (den > 0.0) max_rel = std::max(max_rel, std::abs(s_ana[i] - s_num[i]) / den);
    }

    // denser grid for lineshape diagnostics
    const int nf = 24001;
    Eigen::VectorXd nuf(nf);
    for (int i = 0; i < nf; ++i)
        nuf[i] = rc.spectrum_nu_min +
                 (rc.spectrum_nu_max - rc.spectrum_nu_min) * i / (nf - 1);
    const Eigen::VectorXd sf = output_spectrum_analytic(fp.sys, nuf);
    const FanoScan fano = fano_signature(fp.sys, nuf, sf);

    ResultTable t({"nu", "s_analytic", "s_numeric"}, {"w_a", "1/w_a", "1/w_a"});
    common_meta(t, rc, rm);
    t.meta("label", to_string(fp.eq.config.label));
    t.meta("u0", ResultTable::num(fp.mf.u0));
    t.meta("delta_eff", ResultTable::num(fp.mf.delta_eff));
    t.meta("nbar", ResultTable::num(fp.mf.nbar));
    t.meta("dispersive_margin", ResultTable::num(fp.mf.dispersive_margin));
    t.meta("max_rel_diff", ResultTable::num(max_rel));
    t.meta("drift_stability", ResultTable::num(max_drift_eigenvalue_real(fp.sys.drift)));
    t.meta("fano", fano.found ? "1" : "0");
    for (Eigen::Index i = 0; i < nu.size(); ++i)
        t.add_row({ResultTable::num(nu[i]), ResultTable::num(s_ana[i]),
                   ResultTable::num(s_num[i])});
    t.write(out_path(out_dir, "spectrum.tsv"), version_string, cfg);

    emit_mode_table(rc, rm, fp, out_dir, "spectrum_modes.tsv");
}

void cmd_negativity(const RunConfig& rc, const std::string& out_dir) {
    const ResolvedModel rm = resolve(rc);
    const FluctuationPipeline fp = fluctuation_pipeline(rm, out_dir);
    const std::string cfg = serialize_config(rc);

    GaussianSteadyState sys = fp.sys;
    sys.covariance = solve_lyapunov(sys.drift, sys.diffusion);
    const double residual = lyapunov_residual(sys.drift, sys.diffusion, sys.covariance);

    Eigen::MatrixXd sigma = sys.covariance;
    if (rc.negativity_partition != "all") {
        std::vector<int> keep{0};
        std::istringstream is(rc.negativity_partition);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            int idx = -1;
            try {
                idx = std::stoi(tok);
            } catch (const std::exception&) {
                throw ConfigError("negativity.partition: expected 'all' or mode indices");
            }
            if (idx < 0 || idx >= sys.n_modes())
                throw ConfigError("negativity.partition: mode index out of range");
            keep.push_back(1 + idx);
        }
        sigma = select_modes(sys.covariance, keep);
    }
    const double en = log_negativity(sigma, 1);
    const Eigen::VectorXd nu_pt = symplectic_eigenvalues(partial_transpose(sigma, 1));
    const Eigen::VectorXd nu_phys = symplectic_eigenvalues(sigma);
    const double phys = physicality_margin(sys.covariance);

    ResultTable t({"e_n", "nu_min_pt", "target", "deviation", "physicality_margin",
                   "lyapunov_residual", "partition"},
                  {"-", "-", "-", "-", "-", "nat", "-"});
    common_meta(t, rc, rm);
    t.meta("label", to_string(fp.eq.config.label));
    t.add_row({ResultTable::num(en), ResultTable::num(nu_pt[0]),
               ResultTable::num(negativity_target),
               ResultTable::num(en - negativity_target), ResultTable::num(phys),
               ResultTable::num(residual), rc.negativity_partition});
    t.write(out_path(out_dir, "negativity.tsv"), version_string, cfg);

    ResultTable s({"mode", "nu_physical", "nu_pt"}, {"-", "-", "-"});
    common_meta(s, rc, rm);
    for (Eigen::Index i = 0; i < nu_phys.size(); ++i)
        s.add_row({std::to_string(i), ResultTable::num(nu_phys[i]),
                   ResultTable::num(i < nu_pt.size() ? nu_pt[i] : 0.0)});
    s.write(out_path(out_dir, "symplectic_eigenvalues.tsv"), version_string, cfg);

    ResultTable c({"row", "values"}, {"-", "-"});
    common_meta(c, rc, rm);
    for (Eigen::Index i = 0; i < sys.covariance.rows(); ++i) {
        std::ostringstream row;
        for (Eigen::Index j = 0; j < sys.covariance.cols(); ++j)
            row << (j ? "," : "") << ResultTable::num(sys.covariance(i, j));
        c.add_row({std::to_string(i), row.str()});
    }
    c.write(out_path(out_dir, "covariance.tsv"), version_string, cfg);
}

} // namespace ioncav
