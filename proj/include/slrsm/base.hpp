#pragma once

#include <span>
#include <utility>
#include <vector>

#include "slrsm/expr.hpp"
#include "slrsm/ivp.hpp"

namespace slrsm {

/// Boundary data of the two base solutions at the interface point d:
/// (y_L(d, mu), y_L'(d, mu)) from the left problem and
/// (y_R(d, mu), y_R'(d, mu)) from the right problem.
///
/// Neither pair can vanish simultaneously: a nontrivial solution of a
/// second-order linear ODE cannot vanish together with its derivative.
struct BoundaryQuad {
    double yL = 0.0;
    double dyL = 0.0;
    double yR = 0.0;
    double dyR = 0.0;
    double mu = 0.0;
};

/// Left base problem: -y'' + q y = mu^2 y on [0, d], y(0) = 1, y'(0) = 0.
/// Returns (y_L(d, mu), y_L'(d, mu)).
///
/// mu is consumed only through mu*mu, so the result is bitwise even in mu.
std::pair<double, double> solve_left(const PotentialExpr& q, double mu, double d,
                                     const IvpConfig& cfg = {});

/// Right base problem: -y'' + q y = mu^2 y on [d, pi], y(pi) = 0, y'(pi) = 1,
/// integrated from pi down to d. Returns (y_R(d, mu), y_R'(d, mu)).
std::pair<double, double> solve_right(const PotentialExpr& q, double mu, double d,
                                      const IvpConfig& cfg = {});

/// Left base solution sampled on an ascending grid in [0, d].
std::vector<IvpState> trajectory_left(const PotentialExpr& q, double mu, double d,
                                      const IvpConfig& cfg, std::span<const double> grid);

/// Right base solution sampled on an ascending grid in [d, pi]
/// (integration itself runs from pi down to d).
std::vector<IvpState> trajectory_right(const PotentialExpr& q, double mu, double d,
                                       const IvpConfig& cfg, std::span<const double> grid);

/// Both base problems at one mu.
BoundaryQuad boundary_quad(const PotentialExpr& q, double mu, double d,
                           const IvpConfig& cfg = {});

} // namespace slrsm
