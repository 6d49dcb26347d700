// helmprop: one-way Helmholtz beam propagation driver.
//
//   helmprop run <config>              propagate and write trajectory/snapshots
//   helmprop compare <traj>... [-o f]  centroid_y differences between 2-3 runs
//   helmprop ray-period <config>       paraxial ray period of the configured profile
//
// Exit codes: 0 ok, 1 usage/other, 2 config error, 3 numerical abort, 4 I/O error.

#include "helmprop/helmprop.hpp"

#include <CLI11.hpp>

#include <Eigen/Core>

#include <cstdio>
#include <iostream>

namespace {

enum ExitCode : int { ok = 0, other = 1, config_error = 2, numerical_error = 3, io_error = 4 };

constexpr const char* config_help = R"(Config keys (key = value, '#' comments; defaults in brackets):
  n_points [40]  spacing [1.0]  wavelength [1.3]  beam_width [4.0]
  beam_offset_x [0.0]  beam_offset_y [5.0]
  n0_squared [1.45]  depth [0.1]  clamp_radius [25.0]
  method [svd_fft] = svd_fft | svd_fd | fresnel
  n_singular (required for svd_*, <= n_points^2)
  reference_index | reference_index_squared (one required for fresnel)
  step_length [1.0]  n_steps [496]
  absorber_margin [0.0]  absorber_exponent [2.0]  absorber_every [0 = off]
  snapshot_every [0 = off]  output_dir [out]
  target_n0_squared / target_depth / target_clamp_radius, blend_length [0]
    (z-varying medium: linear blend toward the target profile)
Environment: HELMPROP_THREADS caps kernel threads.)";

int run(const std::string& path) {
    const auto cfg = helmprop::parse_config(path);
    const auto s = helmprop::run_simulation(cfg);
    std::printf("method        %s\n", helmprop::to_string(s.method));
    std::printf("total z       %.6f um\n", s.total_z);
    std::printf("centroid      (%.6f, %.6f) um\n", s.final_centroid.x, s.final_centroid.y);
    std::printf("l2 norm       %.12g\n", s.final_norm);
    std::printf("elapsed       %.3f s\n", s.elapsed_seconds);
    std::printf("trajectory    %s\n", s.trajectory_path.string().c_str());
    std::printf("snapshots     %zu\n", s.snapshot_paths.size());
    return ok;
}

int compare(const std::vector<std::string>& paths, const std::string& report_path) {
    std::vector<std::filesystem::path> files(paths.begin(), paths.end());
    const auto report = helmprop::compare_runs(files);
    std::cout << helmprop::format_comparison(report);
    if (!report_path.empty()) {
        helmprop::write_comparison_report(report_path, report);
        std::cout << "report written to " << report_path << '\n';
    }
    return ok;
}

int ray_period(const std::string& path) {
    const auto cfg = helmprop::parse_config(path);
    std::printf("%.6f\n", helmprop::ray_period(cfg.profile));
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"One-way Helmholtz beam propagation by truncated SVD"};
    app.footer(config_help);
    app.require_subcommand(1);

    std::string run_config;
    auto* run_cmd = app.add_subcommand("run", "Propagate a beam as described by a config file");
    run_cmd->add_option("config", run_config, "Config file")->required()->check(CLI::ExistingFile);

    std::vector<std::string> traj_paths;
    std::string report_path;
    auto* cmp_cmd = app.add_subcommand("compare", "Compare centroid_y trajectories of 2-3 runs");
    cmp_cmd->add_option("trajectories", traj_paths, "Trajectory CSV files")->required()->expected(2, 3);
    cmp_cmd->add_option("-o,--report", report_path, "Write the comparison as CSV");

    std::string period_config;
    auto* period_cmd = app.add_subcommand("ray-period", "Print the paraxial ray period of the profile (um)");
    period_cmd->add_option("config", period_config, "Config file")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : other;
    }

    Eigen::setNbThreads(helmprop::kernel_threads());
    try {
        if (*run_cmd)
            return run(run_config);
        if (*cmp_cmd)
            return compare(traj_paths, report_path);
        if (*period_cmd)
            return ray_period(period_config);
    } catch (const helmprop::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const helmprop::NumericalError& e) {
        std::cerr << "numerical abort: " << e.what() << '\n';
        return numerical_error;
    } catch (const helmprop::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return io_error;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return io_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return other;
    }
    return other;
}
