#pragma once

// Simulation configuration: "key = value" lines, '#' starts a comment.

#include "helmprop/index_profile.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace helmprop {

enum class Method { svd_fft, svd_fd, fresnel };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::svd_fft: return "svd_fft";
        case Method::svd_fd: return "svd_fd";
        case Method::fresnel: return "fresnel";
    }
    return "?";
}

class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, const std::string& message)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}
    /// 1-based offending line, 0 when the problem is not tied to one line.
    int line() const noexcept { return line_; }

private:
    int line_;
};

struct SimConfig {
    int n_points = 40;
    double spacing = 1.0;
    double wavelength = 1.3;
    double beam_width = 4.0;
    double beam_offset_x = 0.0;
    double beam_offset_y = 5.0;
    ParabolicProfile profile{};
    Method method = Method::svd_fft;
    std::optional<int> n_singular;
    double step_length = 1.0;
    int n_steps = 496;
    /// Physical n_ref for the Fresnel phase screen and diffraction.
    std::optional<double> reference_index;
    double absorber_margin = 0.0;
    double absorber_exponent = 2.0;
    int absorber_every = 0;
    int snapshot_every = 0;
    std::filesystem::path output_dir = "out";
    /// Optional second profile blended in linearly over blend_length um (z-varying media).
    std::optional<ParabolicProfile> target_profile;
    double blend_length = 0.0;

    double total_z() const { return n_steps * step_length; }

    /// Throws ConfigError(0, ...) on any constraint violation.
    void validate() const {
        auto fail = [](const std::string& msg) { throw ConfigError(0, msg); };
        if (n_points <= 0 || n_points % 2 != 0)
            fail("n_points must be a positive even integer");
        if (!(spacing > 0.0))
            fail("spacing must be positive");
        if (!(wavelength > 0.0))
            fail("wavelength must be positive");
        if (!(beam_width > 0.0))
            fail("beam_width must be positive");
        try {
            profile.validate();
            if (target_profile)
                target_profile->validate();
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
        if (n_steps < 1)
            fail("n_steps must be at least 1");
        if (!(step_length > 0.0))
            fail("step_length must be positive");
        if (method != Method::fresnel) {
            if (!n_singular)
                fail(std::string("n_singular is required for method ") + to_string(method));
            if (*n_singular < 1 || *n_singular > n_points * n_points)
                fail("n_singular = " + std::to_string(*n_singular) + " must lie in [1, n_points^2 = " +
                     std::to_string(n_points * n_points) + "]");
        } else {
            if (!reference_index)
                fail("reference_index (or reference_index_squared) is required for method fresnel");
            if (!(*reference_index > 0.0))
                fail("reference_index must be positive");
        }
        if (!(absorber_margin >= 0.0) || absorber_margin >= 0.5 * n_points * spacing)
            fail("absorber_margin must lie in [0, W/2)");
        if (!(absorber_exponent > 0.0))
            fail("absorber_exponent must be positive");
        if (absorber_every < 0)
            fail("absorber_every must be >= 0");
        if (snapshot_every < 0)
            fail("snapshot_every must be >= 0");
        if (target_profile && !(blend_length >= 0.0))
            fail("blend_length must be >= 0");
    }
};

namespace detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline double config_real(const std::string& v, int line, const std::string& key) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != v.size() || !std::isfinite(x))
        throw ConfigError(line, "key '" + key + "' expects a real number, got '" + v + "'");
    return x;
}

inline int config_int(const std::string& v, int line, const std::string& key) {
    std::size_t used = 0;
    long x = 0;
    try {
        x = std::stol(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != v.size() || x < std::numeric_limits<int>::min() ||
        x > std::numeric_limits<int>::max())
        throw ConfigError(line, "key '" + key + "' expects an integer, got '" + v + "'");
    return static_cast<int>(x);
}

}  // namespace detail

inline SimConfig parse_config_text(std::istream& in) {
    SimConfig cfg;
    std::map<std::string, int> seen;
    std::optional<double> ref_index, ref_index_sq;
    ParabolicProfile target{};
    bool has_target = false;

    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (const auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        const std::string line = detail::trim(raw);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(lineno, "expected 'key = value', got '" + line + "'");
        const std::string key = detail::trim(std::string_view(line).substr(0, eq));
        const std::string value = detail::trim(std::string_view(line).substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError(lineno, "expected 'key = value', got '" + line + "'");
        if (auto [it, fresh] = seen.emplace(key, lineno); !fresh)
            throw ConfigError(lineno, "duplicate key '" + key + "' (first set on line " +
                                          std::to_string(it->second) + ")");

        auto real = [&] { return detail::config_real(value, lineno, key); };
        auto integer = [&] { return detail::config_int(value, lineno, key); };

        if (key == "n_points") cfg.n_points = integer();
        else if (key == "spacing") cfg.spacing = real();
        else if (key == "wavelength") cfg.wavelength = real();
        else if (key == "beam_width") cfg.beam_width = real();
        else if (key == "beam_offset_x") cfg.beam_offset_x = real();
        else if (key == "beam_offset_y") cfg.beam_offset_y = real();
        else if (key == "n0_squared") cfg.profile.n0_squared = real();
        else if (key == "depth") cfg.profile.depth = real();
        else if (key == "clamp_radius") cfg.profile.clamp_radius = real();
        else if (key == "method") {
            if (value == "svd_fft") cfg.method = Method::svd_fft;
            else if (value == "svd_fd") cfg.method = Method::svd_fd;
            else if (value == "fresnel") cfg.method = Method::fresnel;
            else throw ConfigError(lineno, "unknown method '" + value + "' (svd_fft, svd_fd, fresnel)");
        }
        else if (key == "n_singular") cfg.n_singular = integer();
        else if (key == "step_length") cfg.step_length = real();
        else if (key == "n_steps") cfg.n_steps = integer();
        else if (key == "reference_index") ref_index = real();
        else if (key == "reference_index_squared") ref_index_sq = real();
        else if (key == "absorber_margin") cfg.absorber_margin = real();
        else if (key == "absorber_exponent") cfg.absorber_exponent = real();
        else if (key == "absorber_every") cfg.absorber_every = integer();
        else if (key == "snapshot_every") cfg.snapshot_every = integer();
        else if (key == "output_dir") cfg.output_dir = value;
        else if (key == "target_n0_squared") { target.n0_squared = real(); has_target = true; }
        else if (key == "target_depth") { target.depth = real(); has_target = true; }
        else if (key == "target_clamp_radius") { target.clamp_radius = real(); has_target = true; }
        else if (key == "blend_length") cfg.blend_length = real();
        else throw ConfigError(lineno, "unknown key '" + key + "'");
    }

    if (ref_index && ref_index_sq)
        throw ConfigError(seen["reference_index_squared"],
                          "give either reference_index or reference_index_squared, not both");
    if (ref_index_sq) {
        if (!(*ref_index_sq > 0.0))
            throw ConfigError(seen["reference_index_squared"], "reference_index_squared must be positive");
        cfg.reference_index = std::sqrt(*ref_index_sq);
    } else if (ref_index) {
        cfg.reference_index = *ref_index;
    }
    if (has_target)
        cfg.target_profile = target;
    if (seen.count("blend_length") && !has_target)
        throw ConfigError(seen["blend_length"], "blend_length needs a target profile (target_* keys)");

    auto at_key = [&](const char* key) {
        const auto it = seen.find(key);
        return it == seen.end() ? 0 : it->second;
    };
    try {
        cfg.validate();
    } catch (const ConfigError& e) {
        // Attach the line of the key most likely responsible, when it was given explicitly.
        const std::string msg = e.what();
        for (const char* key : {"n_singular", "n_points", "spacing", "wavelength", "beam_width", "n_steps",
                                "step_length", "reference_index", "reference_index_squared", "absorber_margin",
                                "absorber_exponent", "absorber_every", "snapshot_every", "n0_squared", "depth",
                                "clamp_radius", "blend_length"}) {
            if (msg.rfind(key, 0) == 0 && at_key(key) > 0)
                throw ConfigError(at_key(key), msg);
        }
        throw;
    }
    return cfg;
}

inline SimConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError(0, "cannot open config '" + path.string() + "'");
    return parse_config_text(in);
}

}  // namespace helmprop
