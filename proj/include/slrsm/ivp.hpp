#pragma once

#include <span>
#include <vector>

#include "slrsm/errors.hpp"
#include "slrsm/expr.hpp"

namespace slrsm {

/// Position and solution pair (y, y') along a trajectory.
struct IvpState {
    double x = 0.0;
    double u = 0.0; ///< y
    double v = 0.0; ///< y'
};

/// Step-control settings for the adaptive Fehlberg 4(5) integrator.
///
/// h_init <= 0 selects |to - from| / 100 and h_min <= 0 selects
/// 1e-14 * |to - from|; the resolved values must satisfy h_min < h_init.
struct IvpConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    double h_init = 0.0;
    double h_min = 0.0;
    long max_steps = 1'000'000;
};

/// The step-size controller asked for a step below h_min.
class StepSizeUnderflow : public Error {
public:
    using Error::Error;
};

class MaxStepsExceeded : public Error {
public:
    using Error::Error;
};

/// u or v left the representable range (overflow or NaN).
class NonFiniteState : public Error {
public:
    using Error::Error;
};

struct IvpResult {
    IvpState final;
    std::vector<IvpState> trajectory; ///< states at the requested grid points
    long steps = 0;                   ///< accepted + rejected step attempts
};

/// One embedded Fehlberg 4(5) step for the system u' = v, v' = w(x) u.
/// Returns both the 4th- and 5th-order updates; their difference is the
/// local error estimate of the 4th-order result.
struct FehlbergStep {
    double u4, v4;
    double u5, v5;
    double err_u, err_v;
};

template <class W>
FehlbergStep fehlberg45_step(W&& w, double x, double u, double v, double h) {
    // Classic Fehlberg tableau (NASA TR R-315).
    const double k1u = v;
    const double k1v = w(x) * u;

    double tu = u + h * (k1u / 4.0);
    double tv = v + h * (k1v / 4.0);
    const double k2u = tv;
    const double k2v = w(x + h / 4.0) * tu;

    tu = u + h * (3.0 * k1u + 9.0 * k2u) / 32.0;
    tv = v + h * (3.0 * k1v + 9.0 * k2v) / 32.0;
    const double k3u = tv;
    const double k3v = w(x + 3.0 * h / 8.0) * tu;

    tu = u + h * (1932.0 * k1u - 7200.0 * k2u + 7296.0 * k3u) / 2197.0;
    tv = v + h * (1932.0 * k1v - 7200.0 * k2v + 7296.0 * k3v) / 2197.0;
    const double k4u = tv;
    const double k4v = w(x + 12.0 * h / 13.0) * tu;

    tu = u + h * (439.0 / 216.0 * k1u - 8.0 * k2u + 3680.0 / 513.0 * k3u - 845.0 / 4104.0 * k4u);
    tv = v + h * (439.0 / 216.0 * k1v - 8.0 * k2v + 3680.0 / 513.0 * k3v - 845.0 / 4104.0 * k4v);
    const double k5u = tv;
    const double k5v = w(x + h) * tu;

    tu = u + h * (-8.0 / 27.0 * k1u + 2.0 * k2u - 3544.0 / 2565.0 * k3u + 1859.0 / 4104.0 * k4u -
                  11.0 / 40.0 * k5u);
    tv = v + h * (-8.0 / 27.0 * k1v + 2.0 * k2v - 3544.0 / 2565.0 * k3v + 1859.0 / 4104.0 * k4v -
                  11.0 / 40.0 * k5v);
    const double k6u = tv;
    const double k6v = w(x + h / 2.0) * tu;

    FehlbergStep s;
    s.u4 = u + h * (25.0 / 216.0 * k1u + 1408.0 / 2565.0 * k3u + 2197.0 / 4104.0 * k4u - k5u / 5.0);
    s.v4 = v + h * (25.0 / 216.0 * k1v + 1408.0 / 2565.0 * k3v + 2197.0 / 4104.0 * k4v - k5v / 5.0);
    s.u5 = u + h * (16.0 / 135.0 * k1u + 6656.0 / 12825.0 * k3u + 28561.0 / 56430.0 * k4u -
                    9.0 / 50.0 * k5u + 2.0 / 55.0 * k6u);
    s.v5 = v + h * (16.0 / 135.0 * k1v + 6656.0 / 12825.0 * k3v + 28561.0 / 56430.0 * k4v -
                    9.0 / 50.0 * k5v + 2.0 / 55.0 * k6v);
    s.err_u = h * (k1u / 360.0 - 128.0 / 4275.0 * k3u - 2197.0 / 75240.0 * k4u + k5u / 50.0 +
                   2.0 / 55.0 * k6u);
    s.err_v = h * (k1v / 360.0 - 128.0 / 4275.0 * k3v - 2197.0 / 75240.0 * k4v + k5v / 50.0 +
                   2.0 / 55.0 * k6v);
    return s;
}

/// Integrate u' = v, v' = (q(x) - mu_sq) u from `from` to `to` (either
/// direction) with initial data (u0, v0).
///
/// output_grid must be sorted in the direction of integration and lie
/// between `from` and `to` inclusive; step endpoints are constrained to
/// land exactly on grid points, so the recorded states carry no
/// interpolation error. Step acceptance uses the embedded 4(5) error
/// estimate against abs_tol + rel_tol * |state|, safety factor 0.9,
/// exponent 1/5, growth clamped to [0.1, 5.0] times the previous step.
IvpResult integrate(const PotentialExpr& q, double mu_sq, double from, double to, double u0,
                    double v0, const IvpConfig& cfg = {},
                    std::span<const double> output_grid = {});

} // namespace slrsm
