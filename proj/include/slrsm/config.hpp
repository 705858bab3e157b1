#pragma once

#include <string>

#include "slrsm/ivp.hpp"
#include "slrsm/problem.hpp"
#include "slrsm/sampling.hpp"

namespace slrsm {

/// Config file is malformed or inconsistent; message carries the key.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Everything one run needs, as read from a flat key = value file.
///
/// Keys: q (required), a, d, label, N, m, theta, mu_max, scan_step, tol,
/// grid_pts, output_dir, run_oracle, cache_dir, abs_tol, rel_tol.
/// '#' starts a comment; values may be double-quoted.
struct RunConfig {
    ProblemSpec problem;
    int N = 40;
    int m = 6;
    double theta = 0.0;   ///< <= 0: sigma0 / (N - m)
    double mu_max = 0.0;  ///< <= 0: 0.9 N pi / sigma
    double scan_step = 0.01;
    double tol = 1e-12;
    int grid_pts = 513;
    std::string output_dir = "out";
    std::string cache_dir = ".slrsm-cache";
    bool run_oracle = true;
    IvpConfig ivp;

    SamplingConfig sampling() const { return make_sampling_config(N, m, problem.d, theta); }
    double resolved_mu_max() const;
};

RunConfig parse_config_text(const std::string& text, const std::string& origin = "<config>");
RunConfig load_config(const std::string& path);

/// Cache directory with the SLRSM_CACHE_DIR override applied.
std::string effective_cache_dir(const RunConfig& cfg);

} // namespace slrsm
