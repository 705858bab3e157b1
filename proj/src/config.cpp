#include "slrsm/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace slrsm {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
    return s;
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' expects a number, got '" + value + "'");
    }
}

int to_int(const std::string& key, const std::string& value) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw ConfigError("config: key '" + key + "' expects an integer, got '" + value + "'");
    return v;
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw ConfigError("config: key '" + key + "' expects a boolean, got '" + value + "'");
}

} // namespace

double RunConfig::resolved_mu_max() const {
    if (mu_max > 0.0) return mu_max;
    return 0.9 * sampling().band();
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    bool saw_q = false;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: " + origin + ":" + std::to_string(line_no) +
                              ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = unquote(trim(line.substr(eq + 1)));
        if (key.empty() || value.empty())
            throw ConfigError("config: " + origin + ":" + std::to_string(line_no) +
                              ": empty key or value");

        if (key == "q") {
            cfg.problem.q_source = value;
            saw_q = true;
        } else if (key == "a") {
            cfg.problem.a = to_double(key, value);
        } else if (key == "d") {
            cfg.problem.d = to_double(key, value);
        } else if (key == "label") {
            cfg.problem.label = value;
        } else if (key == "N") {
            cfg.N = to_int(key, value);
        } else if (key == "m") {
            cfg.m = to_int(key, value);
        } else if (key == "theta") {
            cfg.theta = to_double(key, value);
        } else if (key == "mu_max") {
            cfg.mu_max = to_double(key, value);
        } else if (key == "scan_step") {
            cfg.scan_step = to_double(key, value);
        } else if (key == "tol") {
            cfg.tol = to_double(key, value);
        } else if (key == "grid_pts") {
            cfg.grid_pts = to_int(key, value);
        } else if (key == "output_dir") {
            cfg.output_dir = value;
        } else if (key == "cache_dir") {
            cfg.cache_dir = value;
        } else if (key == "run_oracle") {
            cfg.run_oracle = to_bool(key, value);
        } else if (key == "abs_tol") {
            cfg.ivp.abs_tol = to_double(key, value);
        } else if (key == "rel_tol") {
            cfg.ivp.rel_tol = to_double(key, value);
        } else {
            throw ConfigError("config: " + origin + ":" + std::to_string(line_no) +
                              ": unknown key '" + key + "'");
        }
    }

    if (!saw_q) throw ConfigError("config: missing required key 'q'");
    if (cfg.theta != 0.0 && !(cfg.theta > 0.0))
        throw ConfigError("config: theta must be positive (omit it for the default)");
    if (!(cfg.ivp.abs_tol > 0.0) || !(cfg.ivp.rel_tol > 0.0))
        throw ConfigError("config: abs_tol and rel_tol must be positive");
    try {
        validate(cfg.problem);
        parse_potential(cfg.problem.q_source);
        cfg.sampling(); // validates N, m, theta against d
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!(cfg.scan_step > 0.0)) throw ConfigError("config: scan_step must be positive");
    if (!(cfg.tol > 0.0)) throw ConfigError("config: tol must be positive");
    if (cfg.grid_pts < 16) throw ConfigError("config: grid_pts must be >= 16");
    if (cfg.mu_max > 0.0 && cfg.mu_max > 0.9 * cfg.sampling().band())
        throw ConfigError("config: mu_max exceeds 0.9 N pi / sigma");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

std::string effective_cache_dir(const RunConfig& cfg) {
    if (const char* env = std::getenv("SLRSM_CACHE_DIR"); env && *env) return env;
    return cfg.cache_dir;
}

} // namespace slrsm
