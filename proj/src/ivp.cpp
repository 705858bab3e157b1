#include "slrsm/ivp.hpp"

#include <algorithm>
#include <cmath>

namespace slrsm {

namespace {

struct Resolved {
    double h_init;
    double h_min;
};

Resolved resolve(const IvpConfig& cfg, double span) {
    Resolved r;
    r.h_init = cfg.h_init > 0.0 ? cfg.h_init : span / 100.0;
    r.h_min = cfg.h_min > 0.0 ? cfg.h_min : 1e-14 * span;
    if (cfg.abs_tol <= 0.0 || cfg.rel_tol <= 0.0)
        throw Error("ivp: tolerances must be positive");
    if (cfg.max_steps < 1) throw Error("ivp: max_steps must be >= 1");
    if (!(r.h_min < r.h_init)) throw Error("ivp: h_min must be smaller than h_init");
    return r;
}

} // namespace

IvpResult integrate(const PotentialExpr& q, double mu_sq, double from, double to, double u0,
                    double v0, const IvpConfig& cfg, std::span<const double> output_grid) {
    if (from == to) throw Error("ivp: empty integration interval");
    const double span = std::fabs(to - from);
    const Resolved res = resolve(cfg, span);
    const double dir = to > from ? 1.0 : -1.0;

    auto w = [&q, mu_sq](double x) { return q(x) - mu_sq; };

    IvpResult out;
    out.trajectory.reserve(output_grid.size());

    double x = from;
    double u = u0;
    double v = v0;
    double h_control = std::min(res.h_init, span); // unsigned

    std::size_t next_grid = 0;
    // Grid points must march in the integration direction within [from, to].
    for (std::size_t i = 0; i < output_grid.size(); ++i) {
        if (i > 0 && dir * (output_grid[i] - output_grid[i - 1]) < 0.0)
            throw Error("ivp: output_grid not sorted in integration direction");
        if (dir * (output_grid[i] - from) < 0.0 || dir * (to - output_grid[i]) < 0.0)
            throw Error("ivp: output_grid point outside the integration interval");
    }

    // Emit any grid points sitting exactly at the start.
    while (next_grid < output_grid.size() && output_grid[next_grid] == x) {
        out.trajectory.push_back({x, u, v});
        ++next_grid;
    }

    long steps = 0;
    while (dir * (to - x) > 0.0) {
        const double target =
            next_grid < output_grid.size() ? output_grid[next_grid] : to;
        const double remaining = std::fabs(target - x);
        const bool clamped = h_control >= remaining;
        const double h_abs = clamped ? remaining : h_control;
        const double h = dir * h_abs;

        if (++steps > cfg.max_steps)
            throw MaxStepsExceeded("ivp: exceeded " + std::to_string(cfg.max_steps) + " steps");

        const FehlbergStep s = fehlberg45_step(w, x, u, v, h);
        if (!std::isfinite(s.u5) || !std::isfinite(s.v5) || !std::isfinite(s.err_u) ||
            !std::isfinite(s.err_v))
            throw NonFiniteState("ivp: state overflowed at x = " + std::to_string(x));

        const double scale_u = cfg.abs_tol + cfg.rel_tol * std::max(std::fabs(u), std::fabs(s.u5));
        const double scale_v = cfg.abs_tol + cfg.rel_tol * std::max(std::fabs(v), std::fabs(s.v5));
        const double err = std::max(std::fabs(s.err_u) / scale_u, std::fabs(s.err_v) / scale_v);

        double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        factor = std::clamp(factor, 0.1, 5.0);

        if (err <= 1.0) {
            x = clamped ? target : x + h;
            u = s.u5;
            v = s.v5;
            if (!clamped) h_control = std::min(h_abs * factor, span);
            // A clamped step says nothing new about the error scale; keep h_control.
            while (next_grid < output_grid.size() && output_grid[next_grid] == x) {
                out.trajectory.push_back({x, u, v});
                ++next_grid;
            }
        } else {
            const double h_new = h_abs * factor;
            if (h_new < res.h_min)
                throw StepSizeUnderflow("ivp: step size " + std::to_string(h_new) +
                                        " fell below h_min at x = " + std::to_string(x));
            h_control = h_new;
        }
    }

    out.final = {x, u, v};
    out.steps = steps;
    return out;
}

} // namespace slrsm
