#include "slrsm/roots.hpp"

#include <cmath>

#include "slrsm/rootscan.hpp"

namespace slrsm {

namespace {

constexpr double kPi = std::numbers::pi;

double ipow(double base, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= base;
    return r;
}

// B_N as a scan target: singular regularizer points become NaN so the
// scanner can skip and record them.
std::function<double(double)> scan_target(const SampleTable& t, double a,
                                          bool* saw_singular = nullptr) {
    return [&t, a, saw_singular](double mu) {
        try {
            return characteristic_B_N(t, a, mu);
        } catch (const SingularRegularizer&) {
            if (saw_singular) *saw_singular = true;
            return std::numeric_limits<double>::quiet_NaN();
        }
    };
}

// Grid for the error-law fits: in-band, away from both ends.
std::vector<double> fit_grid(const SampleTable& t, int grid_points, double mu_hi = 0.0) {
    const double lo = 0.2;
    const double hi = mu_hi > 0.0 ? mu_hi : 0.85 * t.cfg.band();
    if (!(hi > lo && hi < t.cfg.band())) throw Error("roots: fit grid outside the band");
    std::vector<double> grid(static_cast<std::size_t>(grid_points));
    for (int i = 0; i < grid_points; ++i)
        grid[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid_points - 1);
    return grid;
}

} // namespace

std::vector<RootResult> scan_and_refine(const SampleTable& t, double a, double mu_max,
                                        double scan_step, double tol,
                                        ScanDiagnostics* diagnostics) {
    if (!(scan_step > 0.0) || !(tol > 0.0))
        throw Error("roots: scan_step and tol must be positive");
    const double cap = 0.9 * t.cfg.band();
    if (mu_max > cap)
        throw BandExceeded("roots: mu_max = " + std::to_string(mu_max) +
                           " exceeds 0.9 N pi / sigma = " + std::to_string(cap));

    auto f = scan_target(t, a);
    const std::vector<double> grid = rootscan::uniform_grid(mu_max, scan_step);

    std::vector<double> skipped;
    std::vector<RootResult> roots;
    for (const auto& b : rootscan::scan(f, grid, &skipped)) {
        RootResult r;
        r.mu = rootscan::bisect(f, b, tol, tol);
        // The evenness axis is not a crossing: reject a refined root pinned
        // at zero unless the bracket genuinely straddles a sign change
        // there, which scan() already verified. Negative-side artifacts
        // cannot occur since the grid starts at 0.
        if (r.mu < 0.0) continue;
        r.eigenvalue = r.mu * r.mu;
        r.bracket_lo = b.lo;
        r.bracket_hi = b.hi;
        const double res = f(r.mu);
        r.residual = std::fabs(res);
        roots.push_back(r);
    }
    if (diagnostics) diagnostics->skipped_points = std::move(skipped);
    return roots;
}

double fit_decay_constant(const SampleTable& t, const ProblemSpec& p, const IvpConfig& ivp_cfg,
                          int grid_points, double mu_hi) {
    if (grid_points < 2) throw Error("roots: fit needs at least 2 grid points");
    const SamplingConfig& cfg = t.cfg;
    const double n_pow = ipow(static_cast<double>(cfg.N + 1), cfg.m - 1);
    double c = 0.0;
    for (double mu : fit_grid(t, grid_points, mu_hi)) {
        const double delta = oracle::delta_direct(p, mu, ivp_cfg);
        const double bn = characteristic_B_N(t, p.a, mu);
        const double shape = ipow(sinc(cfg.theta * mu), cfg.m); // |sinc|^{-m} inverted
        c = std::max(c, std::fabs(delta - bn) * std::fabs(shape) * n_pow);
    }
    return c;
}

double fit_c4(const SampleTable& t, const ProblemSpec& p, const IvpConfig& ivp_cfg,
              int grid_points) {
    if (grid_points < 2) throw Error("roots: fit needs at least 2 grid points");
    const SamplingConfig& cfg = t.cfg;
    const double band = cfg.band();
    const double n_pow = ipow(static_cast<double>(cfg.N + 1), cfg.m - 1);
    const double spacing_pow = ipow(kPi / cfg.sigma, cfg.m - 1);
    const double root_factor = std::sqrt(1.0 - std::pow(4.0, 1 - cfg.m));

    double c4 = 0.0;
    for (double mu : fit_grid(t, grid_points)) {
        // Near zeros of sin(sigma mu) the model residual vanishes while the
        // measured one bottoms out at integrator noise; fitting there would
        // only inflate the constant.
        if (std::fabs(std::sin(cfg.sigma * mu)) < 0.5) continue;
        const double delta = oracle::delta_direct(p, mu, ivp_cfg);
        const double bn = characteristic_B_N(t, p.a, mu);
        const double shape = std::fabs(std::sin(cfg.sigma * mu)) /
                             std::fabs(ipow(sinc(cfg.theta * mu), cfg.m)) /
                             (kPi * spacing_pow * root_factor) *
                             (1.0 / std::sqrt(band - mu) + 1.0 / std::sqrt(band + mu)) / n_pow;
        if (shape <= 0.0 || !std::isfinite(shape)) continue;
        c4 = std::max(c4, std::fabs(delta - bn) / shape);
    }
    return c4;
}

double error_estimate(const SampleTable& t, double a, const RootResult& root, double c4) {
    const SamplingConfig& cfg = t.cfg;
    const double mu = root.mu;
    const double band = cfg.band();
    if (!(std::fabs(mu) < band)) throw OutOfBand("roots: root outside the band");

    const double fd_step = 1e-6;
    const double b_plus = characteristic_B_N(t, a, mu + fd_step);
    const double b_minus = characteristic_B_N(t, a, mu - fd_step);
    const double deriv = (b_plus - b_minus) / (2.0 * fd_step);
    if (std::fabs(deriv) < 1e-10)
        throw DerivativeTooSmall("roots: |B_N'| = " + std::to_string(std::fabs(deriv)) +
                                 " at mu = " + std::to_string(mu));

    const double spacing_pow = ipow(kPi / cfg.sigma, cfg.m - 1);
    const double root_factor = std::sqrt(1.0 - std::pow(4.0, 1 - cfg.m));
    const double n_pow = ipow(static_cast<double>(cfg.N + 1), cfg.m - 1);
    const double bound = std::fabs(std::sin(cfg.sigma * mu)) /
                         std::fabs(ipow(sinc(cfg.theta * mu), cfg.m)) /
                         (kPi * spacing_pow * root_factor) *
                         (1.0 / std::sqrt(band - mu) + 1.0 / std::sqrt(band + mu)) / n_pow * c4;
    return bound / std::fabs(deriv);
}

} // namespace slrsm
