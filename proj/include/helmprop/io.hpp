#pragma once

// Plain-text field snapshots and trajectory CSVs.
//
// Snapshot:   "# z=<z> n=<N> dx=<dx>" then N^2 lines "ix,iy,x,y,re,im", ix outer.
// Trajectory: "z,centroid_x,centroid_y,l2_norm" then one line per record.
// Reals are printed with 17 significant digits so that reading back is exact.

#include "helmprop/grid.hpp"
#include "helmprop/index_profile.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace helmprop {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline double parse_real(const std::string& token, const std::string& where) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(token, &used);
    } catch (const std::exception&) {
        throw IoError(where + ": cannot parse number '" + token + "'");
    }
    if (used != token.size())
        throw IoError(where + ": trailing characters in '" + token + "'");
    if (!std::isfinite(v))
        throw IoError(where + ": non-finite value '" + token + "'");
    return v;
}

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(item);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

inline std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    return out;
}

inline void finish_write(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out)
        throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace detail

inline void write_field_snapshot(const std::filesystem::path& path, double z, const Field& field) {
    using detail::format_real;
    auto out = detail::open_for_write(path);
    const Grid& g = field.grid();
    out << "# z=" << format_real(z) << " n=" << g.n_points() << " dx=" << format_real(g.spacing()) << '\n';
    for (int i = 0; i < g.n_points(); ++i) {
        for (int j = 0; j < g.n_points(); ++j) {
            const Complex v = field(i, j);
            out << i << ',' << j << ',' << format_real(g.coordinate(i)) << ',' << format_real(g.coordinate(j))
                << ',' << format_real(v.real()) << ',' << format_real(v.imag()) << '\n';
        }
    }
    detail::finish_write(out, path);
}

struct Snapshot {
    double z;
    Field field;
};

inline Snapshot read_field_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path.string() + "'");
    const std::string where = path.string();
    std::string header;
    if (!std::getline(in, header))
        throw IoError(where + ": empty file");

    double z = 0.0, dx = 0.0;
    int n = 0;
    {
        std::istringstream hs(header);
        std::string hash, zt, nt, dt;
        if (!(hs >> hash >> zt >> nt >> dt) || hash != "#" || zt.rfind("z=", 0) != 0 ||
            nt.rfind("n=", 0) != 0 || dt.rfind("dx=", 0) != 0)
            throw IoError(where + ": malformed header '" + header + "'");
        z = detail::parse_real(zt.substr(2), where + " header");
        dx = detail::parse_real(dt.substr(3), where + " header");
        try {
            std::size_t used = 0;
            n = std::stoi(nt.substr(2), &used);
            if (used != nt.size() - 2)
                throw IoError("");
        } catch (const std::exception&) {
            throw IoError(where + ": malformed point count in header");
        }
    }

    Grid grid = [&] {
        try {
            return Grid(n, dx);
        } catch (const std::invalid_argument& e) {
            throw IoError(where + ": " + e.what());
        }
    }();
    Field field(grid);
    std::string line;
    long expected = static_cast<long>(n) * n;
    long count = 0;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const std::string at = where + ":" + std::to_string(count + 2);
        if (count >= expected)
            throw IoError(at + ": more data lines than n^2");
        const auto cols = detail::split_csv(line);
        if (cols.size() != 6)
            throw IoError(at + ": expected 6 columns");
        const long i = count / n, j = count % n;
        if (std::to_string(i) != cols[0] || std::to_string(j) != cols[1])
            throw IoError(at + ": grid indices out of order");
        field(static_cast<int>(i), static_cast<int>(j)) =
            Complex(detail::parse_real(cols[4], at), detail::parse_real(cols[5], at));
        ++count;
    }
    if (count != expected)
        throw IoError(where + ": expected " + std::to_string(expected) + " data lines, found " +
                      std::to_string(count));
    return {z, std::move(field)};
}

struct TrajectoryRecord {
    double z;
    double centroid_x;
    double centroid_y;
    double l2_norm;
};

inline constexpr const char* trajectory_header = "z,centroid_x,centroid_y,l2_norm";

inline void write_trajectory(const std::filesystem::path& path, const std::vector<TrajectoryRecord>& records) {
    using detail::format_real;
    for (std::size_t k = 1; k < records.size(); ++k)
        if (records[k].z < records[k - 1].z)
            throw std::invalid_argument("write_trajectory: z must be non-decreasing");
    auto out = detail::open_for_write(path);
    out << trajectory_header << '\n';
    for (const auto& r : records)
        out << format_real(r.z) << ',' << format_real(r.centroid_x) << ',' << format_real(r.centroid_y) << ','
            << format_real(r.l2_norm) << '\n';
    detail::finish_write(out, path);
}

inline std::vector<TrajectoryRecord> read_trajectory(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line) || line != trajectory_header)
        throw IoError(path.string() + ": missing trajectory header");
    std::vector<TrajectoryRecord> records;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        const std::string at = path.string() + ":" + std::to_string(lineno);
        const auto cols = detail::split_csv(line);
        if (cols.size() != 4)
            throw IoError(at + ": expected 4 columns");
        records.push_back({detail::parse_real(cols[0], at), detail::parse_real(cols[1], at),
                           detail::parse_real(cols[2], at), detail::parse_real(cols[3], at)});
    }
    return records;
}

/// Paraxial ray period 2 pi a / sqrt(depth) of the clamped parabolic profile.
///
/// With n^2 = n0^2 (1 - depth (r/a)^2), the paraxial ray equation
/// y'' = (1 / 2 n^2) d(n^2)/dy gives y'' = -(depth / a^2) y to leading order,
/// independent of n0.
inline double ray_period(const ParabolicProfile& profile) {
    if (!(profile.depth > 0.0))
        throw std::invalid_argument("ray_period: depth must be positive");
    if (!(profile.clamp_radius > 0.0))
        throw std::invalid_argument("ray_period: clamp_radius must be positive");
    return 2.0 * std::numbers::pi * profile.clamp_radius / std::sqrt(profile.depth);
}

}  // namespace helmprop
