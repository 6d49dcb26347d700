#pragma once

// Config-driven propagation runs and trajectory comparison.

#include "helmprop/absorber.hpp"
#include "helmprop/config.hpp"
#include "helmprop/grid.hpp"
#include "helmprop/index_profile.hpp"
#include "helmprop/io.hpp"
#include "helmprop/operator_builder.hpp"
#include "helmprop/reference.hpp"
#include "helmprop/svd_propagator.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace helmprop {

/// A step produced NaN or Inf.
class NumericalError : public std::runtime_error {
public:
    NumericalError(int step_index, const std::string& message)
        : std::runtime_error("step " + std::to_string(step_index) + ": " + message), step_(step_index) {}
    int step_index() const noexcept { return step_; }

private:
    int step_;
};

struct RunSummary {
    Method method;
    double total_z;
    Centroid final_centroid;
    double final_norm;
    double elapsed_seconds;
    std::filesystem::path trajectory_path;
    std::vector<std::filesystem::path> snapshot_paths;
};

struct RunResult {
    RunSummary summary;
    std::vector<TrajectoryRecord> trajectory;
    Field final_field;
};

/// n^2 map at axial position z: the base profile, or its linear blend toward the
/// target profile over blend_length.
inline IndexSquaredMap index_map_at(const SimConfig& cfg, const Grid& grid, double z) {
    IndexSquaredMap base = sample_profile(grid, cfg.profile);
    if (!cfg.target_profile)
        return base;
    const double t = cfg.blend_length > 0.0 ? z / cfg.blend_length : 1.0;
    return blend_index_maps(base, sample_profile(grid, *cfg.target_profile), t);
}

inline std::string snapshot_name(Method method, int step_index) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "snapshot_%s_%06d.csv", to_string(method), step_index);
    return buf;
}

inline std::filesystem::path trajectory_path(const SimConfig& cfg) {
    return cfg.output_dir / (std::string("trajectory_") + to_string(cfg.method) + ".csv");
}

/// Propagates the configured beam and writes the trajectory (one record per step,
/// z = 0 included) and snapshots to cfg.output_dir.
///
/// SVD methods build and factor the operator once, at the first step midpoint;
/// any z-variation of the medium enters through exp(i dz k0 dn) relative to that
/// reference. Fresnel steps use the midpoint index map of every step directly.
inline RunResult simulate(const SimConfig& cfg) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();

    const Grid grid(cfg.n_points, cfg.spacing);
    const double k0 = wavenumber(cfg.wavelength);
    const double dz = cfg.step_length;
    const bool z_varying = cfg.target_profile.has_value();
    const IndexSquaredMap reference_map = index_map_at(cfg, grid, 0.5 * dz);

    std::optional<AbsorberMask> absorber;
    if (cfg.absorber_every > 0 && cfg.absorber_margin > 0.0)
        absorber = make_absorber(grid, cfg.absorber_margin, cfg.absorber_exponent);

    std::function<Field(const Field&, int)> advance;
    std::optional<PropagatorFactors> factors;
    std::optional<FresnelStepper> fresnel;
    if (cfg.method == Method::fresnel) {
        fresnel.emplace(grid, FresnelConfig{*cfg.reference_index, k0, dz});
        advance = [&](const Field& e, int k) {
            const double zbar = (k + 0.5) * dz;
            return z_varying ? (*fresnel)(index_map_at(cfg, grid, zbar), e) : (*fresnel)(reference_map, e);
        };
    } else {
        const OperatorMatrix op = cfg.method == Method::svd_fft ? build_operator_fft(grid, reference_map, k0)
                                                                : build_operator_fd(grid, reference_map, k0);
        factors.emplace(factorize(op, *cfg.n_singular, dz));
        advance = [&](const Field& e, int k) {
            Field out = step(*factors, e);
            if (z_varying) {
                const double zbar = (k + 0.5) * dz;
                out = perturbative_phase(out, index_delta_map(index_map_at(cfg, grid, zbar), reference_map), k0, dz);
            }
            return out;
        };
    }

    std::filesystem::create_directories(cfg.output_dir);
    std::vector<std::filesystem::path> snapshots;
    auto maybe_snapshot = [&](int k, const Field& e) {
        if (cfg.snapshot_every > 0 && k % cfg.snapshot_every == 0) {
            snapshots.push_back(cfg.output_dir / snapshot_name(cfg.method, k));
            write_field_snapshot(snapshots.back(), k * dz, e);
        }
    };
    auto record = [](double z, const Field& e) {
        const Centroid c = centroid(e);
        return TrajectoryRecord{z, c.x, c.y, l2_norm(e)};
    };

    Field field = gaussian_field(grid, cfg.beam_width, cfg.beam_offset_x, cfg.beam_offset_y);
    if (!(l2_norm(field) > 0.0))
        throw NumericalError(0, "initial beam underflows to zero on this grid");
    std::vector<TrajectoryRecord> trajectory;
    trajectory.reserve(static_cast<std::size_t>(cfg.n_steps) + 1);
    trajectory.push_back(record(0.0, field));
    maybe_snapshot(0, field);

    for (int k = 0; k < cfg.n_steps; ++k) {
        field = advance(field, k);
        if (absorber && (k + 1) % cfg.absorber_every == 0)
            field = apply_absorber(field, *absorber);
        if (!field.all_finite())
            throw NumericalError(k + 1, "non-finite field value");
        if (!(l2_norm(field) > 0.0))
            throw NumericalError(k + 1, "field vanished");
        trajectory.push_back(record((k + 1) * dz, field));
        maybe_snapshot(k + 1, field);
    }

    const auto traj_path = trajectory_path(cfg);
    write_trajectory(traj_path, trajectory);

    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    RunSummary summary{cfg.method,      cfg.total_z(), centroid(field), l2_norm(field),
                       elapsed,         traj_path,     std::move(snapshots)};
    return {std::move(summary), std::move(trajectory), std::move(field)};
}

inline RunSummary run_simulation(const SimConfig& cfg) { return simulate(cfg).summary; }

struct PairComparison {
    std::string run_a;
    std::string run_b;
    double rms_dcentroid_y;
    double max_dcentroid_y;
};

struct ComparisonReport {
    std::vector<PairComparison> pairs;
};

/// RMS and max |centroid_y(a) - centroid_y(b)| over matching z samples.
inline PairComparison compare_trajectories(const std::string& name_a, const std::vector<TrajectoryRecord>& a,
                                           const std::string& name_b, const std::vector<TrajectoryRecord>& b) {
    if (a.size() != b.size() || a.empty())
        throw std::invalid_argument("compare: trajectories " + name_a + " and " + name_b +
                                    " have different (or zero) sample counts");
    double sum_sq = 0.0, max_abs = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (std::abs(a[k].z - b[k].z) > 1e-9 * std::max(1.0, std::abs(a[k].z)))
            throw std::invalid_argument("compare: z grids of " + name_a + " and " + name_b + " differ at sample " +
                                        std::to_string(k));
        const double d = std::abs(a[k].centroid_y - b[k].centroid_y);
        sum_sq += d * d;
        max_abs = std::max(max_abs, d);
    }
    return {name_a, name_b, std::sqrt(sum_sq / static_cast<double>(a.size())), max_abs};
}

inline ComparisonReport compare_runs(const std::vector<std::filesystem::path>& trajectory_paths) {
    if (trajectory_paths.size() < 2 || trajectory_paths.size() > 3)
        throw std::invalid_argument("compare: expected 2 or 3 trajectory files");
    std::vector<std::vector<TrajectoryRecord>> runs;
    for (const auto& p : trajectory_paths)
        runs.push_back(read_trajectory(p));
    ComparisonReport report;
    for (std::size_t i = 0; i < runs.size(); ++i)
        for (std::size_t j = i + 1; j < runs.size(); ++j)
            report.pairs.push_back(compare_trajectories(trajectory_paths[i].string(), runs[i],
                                                        trajectory_paths[j].string(), runs[j]));
    return report;
}

inline void write_comparison_report(const std::filesystem::path& path, const ComparisonReport& report) {
    auto out = detail::open_for_write(path);
    out << "run_a,run_b,rms_dcentroid_y,max_dcentroid_y\n";
    for (const auto& p : report.pairs)
        out << p.run_a << ',' << p.run_b << ',' << detail::format_real(p.rms_dcentroid_y) << ','
            << detail::format_real(p.max_dcentroid_y) << '\n';
    detail::finish_write(out, path);
}

inline std::string format_comparison(const ComparisonReport& report) {
    std::ostringstream os;
    for (const auto& p : report.pairs) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "  rms |dy| = %.6f um   max |dy| = %.6f um\n", p.rms_dcentroid_y,
                      p.max_dcentroid_y);
        os << p.run_a << "  vs  " << p.run_b << '\n' << buf;
    }
    return os.str();
}

}  // namespace helmprop
