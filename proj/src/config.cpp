#include "tfch/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace tfch {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& value, int line, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size())
            fail(line, "trailing characters in value for '" + key + "'");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        fail(line, "cannot parse number for key '" + key + "'");
    }
}

long long parse_int(const std::string& value, int line, const std::string& key) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        fail(line, "cannot parse integer for key '" + key + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& value, int line, const std::string& key) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        fail(line, "cannot parse unsigned integer for key '" + key + "'");
    return v;
}

} // namespace

const char* to_string(MeshMode mode) {
    switch (mode) {
    case MeshMode::uniform: return "uniform";
    case MeshMode::graded: return "graded";
    case MeshMode::adaptive: return "adaptive";
    }
    return "?";
}

const char* to_string(InitialProfile ic) {
    switch (ic) {
    case InitialProfile::star: return "star";
    case InitialProfile::random: return "random";
    case InitialProfile::wedge: return "wedge";
    case InitialProfile::thinfilm: return "thinfilm";
    case InitialProfile::constant: return "constant";
    }
    return "?";
}

const char* to_string(ExtrapolationVariant variant) {
    return variant == ExtrapolationVariant::standard ? "standard" : "ratio";
}

void RunConfig::validate() const {
    physics.validate();
    grid.validate();
    solve.validate();
    if (!(final_time > 0.0))
        throw ConfigError("config: T must be positive");
    if (mode != MeshMode::adaptive && steps < 1)
        throw ConfigError("config: steps must be at least 1");
    if (mode == MeshMode::graded && !(grading >= 1.0))
        throw ConfigError("config: grading must be >= 1");
    if (mode == MeshMode::adaptive)
        adaptive.validate();
    if (ic == InitialProfile::random && ic_amplitude < 0.0)
        throw ConfigError("config: ic_amplitude must be non-negative");
    if (ic == InitialProfile::star &&
        (ic_x0 <= 0.0 || ic_x0 >= grid.lx || ic_y0 <= 0.0 || ic_y0 >= grid.ly))
        throw ConfigError("config: star center must be interior to the domain");
    if (ic == InitialProfile::thinfilm && !(ic_r0 > 0.0))
        throw ConfigError("config: ic_r0 must be positive");
    for (double t : snapshot_times)
        if (t < 0.0 || t > final_time)
            throw ConfigError("config: snapshot times must lie in [0, T]");
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::set<std::string> seen;
    std::set<std::string> required = {"alpha", "mobility", "epsilon", "nx", "ny",
                                      "T", "mode", "ic"};

    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw.erase(hash);
        const std::string stripped = trim(raw);
        if (stripped.empty())
            continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            fail(line, "expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            fail(line, "empty key");
        if (value.empty())
            fail(line, "empty value for key '" + key + "'");
        if (!seen.insert(key).second)
            fail(line, "duplicate key '" + key + "'");

        if (key == "alpha") {
            cfg.physics.alpha = parse_double(value, line, key);
        } else if (key == "mobility") {
            cfg.physics.mobility = parse_double(value, line, key);
        } else if (key == "epsilon") {
            cfg.physics.epsilon = parse_double(value, line, key);
        } else if (key == "nx") {
            cfg.grid.nx = static_cast<int>(parse_int(value, line, key));
        } else if (key == "ny") {
            cfg.grid.ny = static_cast<int>(parse_int(value, line, key));
        } else if (key == "lx") {
            cfg.grid.lx = parse_double(value, line, key);
        } else if (key == "ly") {
            cfg.grid.ly = parse_double(value, line, key);
        } else if (key == "mode") {
            if (value == "uniform") cfg.mode = MeshMode::uniform;
            else if (value == "graded") cfg.mode = MeshMode::graded;
            else if (value == "adaptive") cfg.mode = MeshMode::adaptive;
            else fail(line, "mode must be uniform, graded, or adaptive");
        } else if (key == "T") {
            cfg.final_time = parse_double(value, line, key);
        } else if (key == "steps") {
            cfg.steps = static_cast<int>(parse_int(value, line, key));
        } else if (key == "grading") {
            cfg.grading = parse_double(value, line, key);
        } else if (key == "dt_min") {
            cfg.adaptive.dt_min = parse_double(value, line, key);
        } else if (key == "dt_max") {
            cfg.adaptive.dt_max = parse_double(value, line, key);
        } else if (key == "beta") {
            cfg.adaptive.beta = parse_double(value, line, key);
        } else if (key == "warmup_steps") {
            cfg.adaptive.warmup_steps = static_cast<int>(parse_int(value, line, key));
        } else if (key == "variant") {
            if (value == "standard") cfg.variant = ExtrapolationVariant::standard;
            else if (value == "ratio") cfg.variant = ExtrapolationVariant::ratio_corrected;
            else fail(line, "variant must be standard or ratio");
        } else if (key == "picard_tol") {
            cfg.solve.tol = parse_double(value, line, key);
        } else if (key == "picard_max_iters") {
            cfg.solve.max_iters = static_cast<int>(parse_int(value, line, key));
        } else if (key == "picard_damping") {
            cfg.solve.damping = parse_double(value, line, key);
        } else if (key == "ic") {
            if (value == "star") cfg.ic = InitialProfile::star;
            else if (value == "random") cfg.ic = InitialProfile::random;
            else if (value == "wedge") cfg.ic = InitialProfile::wedge;
            else if (value == "thinfilm") cfg.ic = InitialProfile::thinfilm;
            else if (value == "constant") cfg.ic = InitialProfile::constant;
            else fail(line, "ic must be star, random, wedge, thinfilm, or constant");
        } else if (key == "ic_mean") {
            cfg.ic_mean = parse_double(value, line, key);
        } else if (key == "ic_amplitude") {
            cfg.ic_amplitude = parse_double(value, line, key);
        } else if (key == "ic_x0") {
            cfg.ic_x0 = parse_double(value, line, key);
        } else if (key == "ic_y0") {
            cfg.ic_y0 = parse_double(value, line, key);
        } else if (key == "ic_value") {
            cfg.ic_value = parse_double(value, line, key);
        } else if (key == "ic_r0") {
            cfg.ic_r0 = parse_double(value, line, key);
        } else if (key == "seed") {
            cfg.seed = parse_u64(value, line, key);
        } else if (key == "out_dir") {
            cfg.out_dir = value;
        } else if (key == "snapshot_times") {
            cfg.snapshot_times.clear();
            std::istringstream list(value);
            std::string item;
            while (std::getline(list, item, ',')) {
                const std::string token = trim(item);
                if (token.empty())
                    fail(line, "empty entry in snapshot_times");
                cfg.snapshot_times.push_back(parse_double(token, line, key));
            }
        } else {
            fail(line, "unknown key '" + key + "'");
        }
    }

    for (const auto& key : required)
        if (!seen.contains(key))
            throw ConfigError("config: missing required key '" + key + "'");
    if (cfg.mode != MeshMode::adaptive && !seen.contains("steps"))
        throw ConfigError("config: missing required key 'steps' for fixed meshes");
    if (cfg.mode == MeshMode::graded && !seen.contains("grading"))
        throw ConfigError("config: missing required key 'grading' for graded meshes");

    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string RunConfig::serialize() const {
    std::ostringstream out;
    out.precision(17);
    out << "alpha = " << physics.alpha << "\n"
        << "mobility = " << physics.mobility << "\n"
        << "epsilon = " << physics.epsilon << "\n"
        << "nx = " << grid.nx << "\n"
        << "ny = " << grid.ny << "\n"
        << "lx = " << grid.lx << "\n"
        << "ly = " << grid.ly << "\n"
        << "mode = " << to_string(mode) << "\n"
        << "T = " << final_time << "\n";
    if (mode != MeshMode::adaptive)
        out << "steps = " << steps << "\n";
    if (mode == MeshMode::graded)
        out << "grading = " << grading << "\n";
    if (mode == MeshMode::adaptive)
        out << "dt_min = " << adaptive.dt_min << "\n"
            << "dt_max = " << adaptive.dt_max << "\n"
            << "beta = " << adaptive.beta << "\n"
            << "warmup_steps = " << adaptive.warmup_steps << "\n";
    out << "variant = " << to_string(variant) << "\n"
        << "picard_tol = " << solve.tol << "\n"
        << "picard_max_iters = " << solve.max_iters << "\n"
        << "picard_damping = " << solve.damping << "\n"
        << "ic = " << to_string(ic) << "\n";
    switch (ic) {
    case InitialProfile::star:
        out << "ic_x0 = " << ic_x0 << "\n"
            << "ic_y0 = " << ic_y0 << "\n";
        break;
    case InitialProfile::random:
        out << "ic_mean = " << ic_mean << "\n"
            << "ic_amplitude = " << ic_amplitude << "\n";
        break;
    case InitialProfile::thinfilm:
        out << "ic_r0 = " << ic_r0 << "\n";
        break;
    case InitialProfile::constant:
        out << "ic_value = " << ic_value << "\n";
        break;
    case InitialProfile::wedge:
        break;
    }
    out << "seed = " << seed << "\n"
        << "out_dir = " << out_dir << "\n";
    if (!snapshot_times.empty()) {
        out << "snapshot_times = ";
        for (std::size_t i = 0; i < snapshot_times.size(); ++i)
            out << (i ? ", " : "") << snapshot_times[i];
        out << "\n";
    }
    return out.str();
}

} // namespace tfch
