#include <CLI11.hpp>

#include <cstdint>
#include <iostream>

#include "tfch/kernel_verify.hpp"
#include "tfch/simulation.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::string variant;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("config", opts.config_path, "run configuration file")->required();
    cmd->add_option("--out-dir", opts.out_dir, "override the configured output directory");
    cmd->add_option("--variant", opts.variant, "override the extrapolation variant")
        ->check(CLI::IsMember({"standard", "ratio"}));
    cmd->add_option("--seed", opts.seed, "override the configured rng seed")
        ->each([&opts](const std::string&) { opts.seed_set = true; });
}

tfch::RunConfig load_with_overrides(const CommonOpts& opts) {
    tfch::RunConfig config = tfch::load_config(opts.config_path);
    if (!opts.out_dir.empty())
        config.out_dir = opts.out_dir;
    if (!opts.variant.empty())
        config.variant = opts.variant == "ratio" ? tfch::ExtrapolationVariant::ratio_corrected
                                                 : tfch::ExtrapolationVariant::standard;
    if (opts.seed_set)
        config.seed = opts.seed;
    config.validate();
    return config;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudospectral solver for the time-fractional Cahn-Hilliard equation"};
    app.require_subcommand(1);

    CommonOpts run_opts;
    CLI::App* run_cmd = app.add_subcommand("run", "integrate one configuration to T");
    add_common(run_cmd, run_opts);

    CommonOpts study_opts;
    int levels = 5;
    CLI::App* study_cmd =
        app.add_subcommand("study", "temporal refinement study against self-refined references");
    add_common(study_cmd, study_opts);
    study_cmd->add_option("--levels", levels, "number of halvings of the base step")
        ->check(CLI::Range(3, 12));

    int samples = 100;
    std::uint64_t verify_seed = 20240901;
    CLI::App* verify_cmd = app.add_subcommand(
        "verify-kernels", "cross-check kernel closed forms against quadrature");
    verify_cmd->add_option("--samples", samples, "number of random meshes")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", verify_seed, "rng seed for the random meshes");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            const tfch::RunConfig config = load_with_overrides(run_opts);
            const tfch::RunResult result = tfch::run_simulation(config);
            const auto& last = result.records.back();
            std::cout << "steps: " << last.n << "  t: " << last.t << "  energy: " << last.energy
                      << "  mass drift: " << last.mass_drift << "\n"
                      << "outputs in " << config.out_dir << "\n";
            return result.exit_code;
        }
        if (*study_cmd) {
            const tfch::RunConfig config = load_with_overrides(study_opts);
            const tfch::StudyResult result = tfch::run_convergence_study(config, levels);
            std::cout << "dt,error,order\n";
            for (std::size_t j = 0; j < result.errors.size(); ++j) {
                std::cout << result.dts[j] << ',' << result.errors[j] << ',';
                if (j > 0)
                    std::cout << result.orders[j - 1];
                std::cout << '\n';
            }
            std::cout << "table written to " << config.out_dir << "/study.csv\n";
            return 0;
        }
        const auto report = tfch::verify::run_kernel_checks(samples, verify_seed);
        std::cout << report.summary() << "\n";
        return report.pass ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
