#include "ioncav/runconfig.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "ioncav/cavity.hpp"
#include "ioncav/equilibrium.hpp"

namespace ioncav {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

struct RawValue {
    std::string text;
    int line;
};

using RawMap = std::map<std::string, RawValue>;

double parse_number(const std::string& key, const std::string& tok) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key + ": not a number: '" + tok + "'");
    }
}

// value = "<number> <unit>"; returns the value converted by the unit table.
double parse_with_unit(const std::string& key, const std::string& text,
                       const std::vector<std::pair<std::string, double>>& units,
                       const char* dimension) {
    std::istringstream is(text);
    std::string num, unit, extra;
    is >> num >> unit;
    if (is >> extra) throw ConfigError(key + ": trailing content '" + extra + "'");
    if (unit.empty())
        throw ConfigError(key + ": missing " + std::string(dimension) + " unit");
    for (const auto& [name, scale] : units)
        if (unit == name) return parse_number(key, num) * scale;
    throw ConfigError(key + ": unknown " + std::string(dimension) + " unit '" + unit + "'");
}

double parse_frequency_mhz(const std::string& key, const std::string& text) {
    return parse_with_unit(key, text,
                           {{"Hz", 1e-6}, {"kHz", 1e-3}, {"MHz", 1.0}, {"GHz", 1e3}},
                           "frequency");
}

double parse_length(const std::string& key, const std::string& text, double to_unit) {
    // to_unit: target in meters (1e-6 -> value returned in um)
    const double m = parse_with_unit(
        key, text, {{"nm", 1e-9}, {"um", 1e-6}, {"mm", 1e-3}, {"m", 1.0}}, "length");
    return m / to_unit;
}

double parse_temperature_mk(const std::string& key, const std::string& text) {
    return parse_with_unit(key, text, {{"uK", 1e-3}, {"mK", 1.0}, {"K", 1e3}},
                           "temperature");
}

double parse_bare(const std::string& key, const std::string& text) {
    std::istringstream is(text);
    std::string num, extra;
    is >> num;
    if (is >> extra)
        throw ConfigError(key + ": dimensionless quantity must carry no unit");
    return parse_number(key, num);
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError(key + ": empty list element");
        out.push_back(parse_number(key, item));
    }
    if (out.empty()) throw ConfigError(key + ": empty list");
    return out;
}

std::string fmt(double v) {
    char buf[32];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(len));
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RawMap raw;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        if (!raw.emplace(key, RawValue{val, lineno}).second)
            throw ConfigError("duplicate key '" + key + "'");
    }

    RunConfig rc;
    auto take = [&](const char* key) -> std::optional<std::string> {
        auto it = raw.find(key);
        if (it == raw.end()) return std::nullopt;
        std::string v = it->second.text;
        raw.erase(it);
        return v;
    };
    auto require = [&](const char* key) -> std::string {
        auto v = take(key);
        if (!v) throw ConfigError(std::string("missing required key '") + key + "'");
        return *v;
    };

    rc.ions = static_cast<int>(parse_bare("ions", require("ions")));
    if (rc.ions < 1) throw ConfigError("ions must be >= 1");
    rc.mass_amu = parse_with_unit("mass", require("mass"), {{"amu", 1.0}}, "mass");
    if (auto v = take("charge"))
        rc.charge_e = parse_with_unit("charge", *v, {{"e", 1.0}}, "charge");
    rc.omega_a_mhz = parse_frequency_mhz("omega_a", require("omega_a"));
    rc.omega_t_mhz = parse_frequency_mhz("omega_t", require("omega_t"));
    if (auto v = take("g0")) rc.g0_mhz = parse_frequency_mhz("g0", *v);
    if (auto v = take("cooperativity")) rc.cooperativity = parse_bare("cooperativity", *v);
    if (rc.g0_mhz && rc.cooperativity)
        throw ConfigError("give either g0 or cooperativity, not both");
    if (!rc.g0_mhz && !rc.cooperativity)
        throw ConfigError("one of g0 / cooperativity is required");
    rc.kappa_mhz = parse_frequency_mhz("kappa", require("kappa"));
    if (auto v = take("gamma")) rc.gamma_mhz = parse_frequency_mhz("gamma", *v);
    rc.delta0_mhz = parse_frequency_mhz("Delta0", require("Delta0"));
    if (auto v = take("Delta_c")) rc.delta_c_mhz = parse_frequency_mhz("Delta_c", *v);
    rc.wavelength_nm = parse_length("wavelength", require("wavelength"), 1e-9);
    rc.sigma_um = parse_length("sigma", require("sigma"), 1e-6);
    if (auto v = take("y0")) {
        if (trim(*v) == "edge")
            rc.y0_edge = true;
        else
            rc.y0_um = parse_length("y0", *v, 1e-6);
    }
    if (auto v = take("pump_P")) rc.pump_p = parse_bare("pump_P", *v);
    if (auto v = take("eta")) rc.eta_mhz = parse_frequency_mhz("eta", *v);
    if (rc.pump_p && rc.eta_mhz) throw ConfigError("give either pump_P or eta, not both");
    if (!rc.pump_p && !rc.eta_mhz) throw ConfigError("one of pump_P / eta is required");
    if (auto v = take("Gamma_n")) rc.gamma_n_mhz = parse_frequency_mhz("Gamma_n", *v);
    if (auto v = take("bath_temperature"))
        rc.bath_temperature_mk = parse_temperature_mk("bath_temperature", *v);
    if (auto v = take("bath_occupation"))
        rc.bath_occupation = parse_bare("bath_occupation", *v);
    if (auto v = take("structure.pump_P"))
        rc.structure_pump_p = parse_bare("structure.pump_P", *v);
    if (auto v = take("structure.cooperativity"))
        rc.structure_cooperativity = parse_bare("structure.cooperativity", *v);
    if (auto v = take("structure.seed")) {
        const std::string s = trim(*v);
        if (s == "zigzag")
            rc.structure_seed_zigzag = true;
        else if (s == "linear")
            rc.structure_seed_zigzag = false;
        else
            throw ConfigError("structure.seed: expected zigzag or linear");
    }
    if (auto v = take("coupling_floor")) rc.coupling_floor = parse_bare("coupling_floor", *v);
    if (auto v = take("out_dir")) rc.out_dir = trim(*v);
    if (auto v = take("seed"))
        rc.seed = static_cast<std::uint64_t>(parse_bare("seed", *v));
    if (auto v = take("threads")) rc.threads = static_cast<int>(parse_bare("threads", *v));
    if (rc.threads < 1) throw ConfigError("threads must be >= 1");

    if (auto v = take("sweep.p_min")) rc.sweep_p_min = parse_bare("sweep.p_min", *v);
    if (auto v = take("sweep.p_max")) rc.sweep_p_max = parse_bare("sweep.p_max", *v);
    if (auto v = take("sweep.points"))
        rc.sweep_points = static_cast<int>(parse_bare("sweep.points", *v));
    if (auto v = take("softmode.x_max")) rc.softmode_x_max = parse_bare("softmode.x_max", *v);
    if (auto v = take("softmode.points"))
        rc.softmode_points = static_cast<int>(parse_bare("softmode.points", *v));
    if (auto v = take("softmode.P")) rc.softmode_p = parse_list("softmode.P", *v);
    if (auto v = take("spectrum.nu_min")) rc.spectrum_nu_min = parse_bare("spectrum.nu_min", *v);
    if (auto v = take("spectrum.nu_max")) rc.spectrum_nu_max = parse_bare("spectrum.nu_max", *v);
    if (auto v = take("spectrum.points"))
        rc.spectrum_points = static_cast<int>(parse_bare("spectrum.points", *v));
    if (auto v = take("negativity.partition")) rc.negativity_partition = trim(*v);

    if (rc.sweep_points < 1) throw ConfigError("sweep.points must be >= 1");
    if (!(rc.sweep_p_max >= rc.sweep_p_min))
        throw ConfigError("sweep.p_max must be >= sweep.p_min");
    if (rc.softmode_points < 3) throw ConfigError("softmode.points must be >= 3");
    if (rc.softmode_x_max <= 0.0) throw ConfigError("softmode.x_max must be > 0");
    if (rc.spectrum_points < 2) throw ConfigError("spectrum.points must be >= 2");
    if (!(rc.spectrum_nu_max > rc.spectrum_nu_min))
        throw ConfigError("spectrum.nu_max must exceed spectrum.nu_min");
    if (rc.coupling_floor < 0.0 || rc.coupling_floor >= 1.0)
        throw ConfigError("coupling_floor must lie in [0, 1)");

    if (!raw.empty())
        throw ConfigError("unknown key '" + raw.begin()->first + "' (line " +
                          std::to_string(raw.begin()->second.line) + ")");
    return rc;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& rc) {
    std::ostringstream os;
    os << "ions = " << rc.ions << "\n";
    os << "mass = " << fmt(rc.mass_amu) << " amu\n";
    os << "charge = " << fmt(rc.charge_e) << " e\n";
    os << "omega_a = " << fmt(rc.omega_a_mhz) << " MHz\n";
    os << "omega_t = " << fmt(rc.omega_t_mhz) << " MHz\n";
    if (rc.g0_mhz) os << "g0 = " << fmt(*rc.g0_mhz) << " MHz\n";
    if (rc.cooperativity) os << "cooperativity = " << fmt(*rc.cooperativity) << "\n";
    os << "kappa = " << fmt(rc.kappa_mhz) << " MHz\n";
    os << "gamma = " << fmt(rc.gamma_mhz) << " MHz\n";
    os << "Delta0 = " << fmt(rc.delta0_mhz) << " MHz\n";
    os << "Delta_c = " << fmt(rc.delta_c_mhz) << " MHz\n";
    os << "wavelength = " << fmt(rc.wavelength_nm) << " nm\n";
    os << "sigma = " << fmt(rc.sigma_um) << " um\n";
    if (rc.y0_edge)
        os << "y0 = edge\n";
    else
        os << "y0 = " << fmt(rc.y0_um) << " um\n";
    if (rc.pump_p) os << "pump_P = " << fmt(*rc.pump_p) << "\n";
    if (rc.eta_mhz) os << "eta = " << fmt(*rc.eta_mhz) << " MHz\n";
    if (rc.gamma_n_mhz) os << "Gamma_n = " << fmt(*rc.gamma_n_mhz) << " MHz\n";
    os << "bath_temperature = " << fmt(rc.bath_temperature_mk) << " mK\n";
    if (rc.bath_occupation) os << "bath_occupation = " << fmt(*rc.bath_occupation) << "\n";
    if (rc.structure_pump_p) os << "structure.pump_P = " << fmt(*rc.structure_pump_p) << "\n";
    if (rc.structure_cooperativity)
        os << "structure.cooperativity = " << fmt(*rc.structure_cooperativity) << "\n";
    os << "structure.seed = " << (rc.structure_seed_zigzag ? "zigzag" : "linear") << "\n";
    // out_dir is run placement, not physics: parsed but kept out of the
    // canonical form so outputs stay byte-identical across destinations
    os << "coupling_floor = " << fmt(rc.coupling_floor) << "\n";
    os << "seed = " << rc.seed << "\n";
    os << "threads = " << rc.threads << "\n";
    os << "sweep.p_min = " << fmt(rc.sweep_p_min) << "\n";
    os << "sweep.p_max = " << fmt(rc.sweep_p_max) << "\n";
    os << "sweep.points = " << rc.sweep_points << "\n";
    os << "softmode.x_max = " << fmt(rc.softmode_x_max) << "\n";
    os << "softmode.points = " << rc.softmode_points << "\n";
    if (!rc.softmode_p.empty()) {
        os << "softmode.P = ";
        for (std::size_t i = 0; i < rc.softmode_p.size(); ++i)
            os << (i ? ", " : "") << fmt(rc.softmode_p[i]);
        os << "\n";
    }
    os << "spectrum.nu_min = " << fmt(rc.spectrum_nu_min) << "\n";
    os << "spectrum.nu_max = " << fmt(rc.spectrum_nu_max) << "\n";
    os << "spectrum.points = " << rc.spectrum_points << "\n";
    os << "negativity.partition = " << rc.negativity_partition << "\n";
    return os.str();
}

std::uint64_t config_hash(const RunConfig& rc) {
    const std::string s = serialize_config(rc);
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

ResolvedModel resolve(const RunConfig& rc) {
    ResolvedModel rm;
    rm.config = rc;

    SystemParams sp;
    sp.n_ions = rc.ions;
    sp.mass = rc.mass_amu * constants::atomic_mass_unit;
    sp.charge = rc.charge_e * constants::elementary_charge;
    const double two_pi_mhz = 2.0 * constants::pi * 1e6;
    sp.omega_a = rc.omega_a_mhz * two_pi_mhz;
    sp.omega_t = rc.omega_t_mhz * two_pi_mhz;
    sp.kappa = rc.kappa_mhz * two_pi_mhz;
    sp.gamma = rc.gamma_mhz * two_pi_mhz;
    sp.delta0 = rc.delta0_mhz * two_pi_mhz;
    sp.delta_c = rc.delta_c_mhz * two_pi_mhz;
    sp.wavenumber = 2.0 * constants::pi / (rc.wavelength_nm * 1e-9);
    sp.sigma = rc.sigma_um * 1e-6;
    sp.y0 = rc.y0_um * 1e-6;
    sp.g0 = rc.g0_mhz ? *rc.g0_mhz * two_pi_mhz : 0.0;
    sp.eta = rc.eta_mhz ? *rc.eta_mhz * two_pi_mhz : 0.0;
    sp.gamma_m = rc.gamma_n_mhz ? *rc.gamma_n_mhz * two_pi_mhz : 1e-3 * sp.omega_a;
    sp.bath_temperature = rc.bath_temperature_mk * 1e-3;
    sp.bath_occupation = rc.bath_occupation;
    rm.ell = sp.length_unit();
    rm.physical = sp;

    NaturalParams np = to_natural(sp);

    // pump-off linear chain fixes the mode geometry (y0 = edge, N_eff)
    NaturalParams np_off = np;
    np_off.eta = 0.0;
    np_off.g0 = 0.0;
    rm.linear = linear_chain_equilibrium(np_off);
    if (rc.y0_edge) {
        np.y0 = rm.linear.y.maxCoeff();
        rm.physical.y0 = np.y0 * rm.ell;
    }
    rm.n_eff = effective_ion_number(np, rm.linear.y);

    if (rc.cooperativity) {
        np.g0 = std::sqrt(*rc.cooperativity * np.kappa * std::abs(np.delta0) / rm.n_eff);
        rm.physical.g0 = np.g0 * sp.omega_a;
    }
    if (rc.pump_p) {
        np.eta = std::sqrt(*rc.pump_p * np.eta0_sq());
        rm.physical.eta = np.eta * sp.omega_a;
    }

    rm.structure_natural = np;
    if (rc.structure_cooperativity)
        rm.structure_natural.g0 = std::sqrt(*rc.structure_cooperativity * np.kappa *
                                            std::abs(np.delta0) / rm.n_eff);
    if (rc.structure_pump_p)
        rm.structure_natural.eta =
            std::sqrt(*rc.structure_pump_p * rm.structure_natural.eta0_sq());
    rm.natural = np;
    return rm;
}

} // namespace ioncav
