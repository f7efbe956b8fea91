#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ioncav/configuration.hpp"
#include "ioncav/params.hpp"

namespace ioncav {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Run configuration in physical units. Frequencies are ordinary frequencies
/// (multiplied by 2 pi internally), as stated per field.
struct RunConfig {
    int ions = 0;
    double mass_amu = 0.0;
    double charge_e = 1.0;
    double omega_a_mhz = 0.0;  // ordinary frequency, x 2pi internally
    double omega_t_mhz = 0.0;
    std::optional<double> g0_mhz;          // exactly one of g0 / cooperativity
    std::optional<double> cooperativity;   // solves g0^2 = C kappa |Delta0| / N_eff
    double kappa_mhz = 0.0;
    double gamma_mhz = 0.0;
    double delta0_mhz = 0.0;
    double delta_c_mhz = 0.0;
    double wavelength_nm = 0.0;
    double sigma_um = 0.0;
    double y0_um = 0.0;
    bool y0_edge = false;  // place the mode center on the +y edge ion
    std::optional<double> pump_p;  // exactly one of pump_P / eta
    std::optional<double> eta_mhz;
    std::optional<double> gamma_n_mhz;       // default 1e-3 omega_a
    double bath_temperature_mk = 0.5;        // thermal occupations N_n
    std::optional<double> bath_occupation;   // uniform N_n override
    // optional pump/coupling overrides for the structural relaxation only
    std::optional<double> structure_pump_p;
    std::optional<double> structure_cooperativity;
    bool structure_seed_zigzag = true;
    double coupling_floor = 0.0;  // mode truncation, fraction of max |c_n|
    std::string out_dir = "out";  // overridden by --out
    std::uint64_t seed = 0;
    int threads = 1;
    // command blocks
    double sweep_p_min = 0.0;
    double sweep_p_max = 300.0;
    int sweep_points = 201;
    double softmode_x_max = 3.2;  // central-ion displacement range, units 1/k
    int softmode_points = 481;
    std::vector<double> softmode_p;  // defaults to [pump_P]
    double spectrum_nu_min = -3.0;   // units of omega_a
    double spectrum_nu_max = 3.0;
    int spectrum_points = 1000;
    std::string negativity_partition = "all";  // "all" | comma-separated mode indices
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& rc);

/// FNV-1a over the canonical serialization.
std::uint64_t config_hash(const RunConfig& rc);

/// Everything derived from a config that commands share: physical and natural
/// parameter sets, the pump-off linear chain, the resolved mode geometry.
struct ResolvedModel {
    RunConfig config;
    SystemParams physical;
    NaturalParams natural;            // pump and coupling of the run
    NaturalParams structure_natural;  // used for the structural relaxation
    IonConfiguration linear;          // eta = 0 linear equilibrium
    double n_eff = 0.0;               // envelope sum over the linear chain
    double ell = 0.0;                 // length unit, m
};

ResolvedModel resolve(const RunConfig& rc);

} // namespace ioncav
