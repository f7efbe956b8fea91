#pragma once

#include <stdexcept>
#include <string>

#include "ioncav/runconfig.hpp"

namespace ioncav {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exit codes: 0 success, 2 config error, 3 solver non-convergence,
// 4 no steady state.
inline constexpr int exit_config_error = 2;
inline constexpr int exit_solver_error = 3;
inline constexpr int exit_no_steady_state = 4;

void cmd_equilibrium(const RunConfig& rc, const std::string& out_dir);
void cmd_sweep(const RunConfig& rc, const std::string& out_dir);
void cmd_softmode(const RunConfig& rc, const std::string& out_dir);
void cmd_spectrum(const RunConfig& rc, const std::string& out_dir);
void cmd_negativity(const RunConfig& rc, const std::string& out_dir);
void cmd_modes(const RunConfig& rc, const std::string& out_dir);

} // namespace ioncav
