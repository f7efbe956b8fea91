#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "ioncav/commands.hpp"
#include "ioncav/kernels.hpp"
#include "ioncav/lyapunov.hpp"
#include "ioncav/modes.hpp"

using namespace ioncav;

int main(int argc, char** argv) {
    CLI::App app{"ion chain in a pumped optical cavity: equilibria, bistability, "
                 "fluctuation spectra and entanglement"};
    app.require_subcommand(1);

    std::string config_path, out_dir, kernel_choice = "auto";
    std::int64_t seed_override = -1;
    int threads_override = 0;

    const std::map<std::string, std::function<void(const RunConfig&, const std::string&)>>
        verbs = {{"equilibrium", cmd_equilibrium}, {"sweep", cmd_sweep},
                 {"softmode", cmd_softmode},       {"spectrum", cmd_spectrum},
                 {"negativity", cmd_negativity},   {"modes", cmd_modes}};

    for (const auto& [name, fn] : verbs) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "configuration file")->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed_override, "override the RNG seed");
        sub->add_option("--threads", threads_override, "override the thread count");
        sub->add_option("--kernels", kernel_choice, "auto|scalar|avx2");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (kernel_choice == "scalar")
            kernels::select(kernels::Isa::Scalar);
        else if (kernel_choice == "avx2")
            kernels::select(kernels::Isa::Avx2);
        else if (kernel_choice == "auto")
            kernels::select(kernels::Isa::Auto);
        else
            throw ConfigError("--kernels: expected auto, scalar or avx2");

        RunConfig rc = load_config(config_path);
        if (seed_override >= 0) rc.seed = static_cast<std::uint64_t>(seed_override);
        if (threads_override > 0) rc.threads = threads_override;
        if (!out_dir.empty()) rc.out_dir = out_dir;

        const std::string verb = app.get_subcommands().front()->get_name();
        verbs.at(verb)(rc, rc.out_dir);
        std::fprintf(stderr, "%s: ok (kernels: %s)\n", verb.c_str(),
                     kernels::active().name);
        return 0;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return exit_config_error;
    } catch (const ParamError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return exit_config_error;
    } catch (const NoSteadyStateError& e) {
        std::fprintf(stderr, "no steady state: %s\n", e.what());
        return exit_no_steady_state;
    } catch (const SolverError& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return exit_solver_error;
    } catch (const UnstableConfigurationError& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return exit_solver_error;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
