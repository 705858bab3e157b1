#pragma once

#include <vector>

#include "slrsm/ivp.hpp"
#include "slrsm/problem.hpp"

namespace slrsm::oracle {

enum class Method { direct_shooting, closed_form_q0 };

/// Reference zeros of the characteristic function, computed without any
/// sampling machinery.
struct OracleResult {
    std::vector<double> zeros; ///< strictly increasing, each a verified sign change
    double scan_step = 0.0;
    double tol = 0.0;
    Method method = Method::direct_shooting;
};

/// Tight tolerances for reference computations.
IvpConfig reference_ivp_config();

/// Characteristic determinant a yL dyR - a^{-1} dyL yR with the boundary
/// quad obtained by direct integration at the given tolerance.
/// Even in mu (bitwise): mu enters only as mu*mu.
double delta_direct(const ProblemSpec& p, double mu, const IvpConfig& cfg = reference_ivp_config());

/// Dense scan + bisection on delta_direct over [0, mu_max].
OracleResult find_zeros_direct(const ProblemSpec& p, double mu_max, double scan_step = 0.01,
                               double tol = 1e-12, const IvpConfig& cfg = reference_ivp_config());

/// Closed form of the determinant for q == 0:
///   a cos(mu d) cos(mu (pi-d)) - a^{-1} sin(mu d) sin(mu (pi-d)).
/// Finite everywhere; equals a at mu = 0 and cos(mu pi) when a = 1.
double closed_form_q0(double a, double d, double mu);

/// Dense scan + bisection on the q = 0 closed form.
OracleResult find_zeros_q0(double a, double d, double mu_max, double scan_step = 0.01,
                           double tol = 1e-12);

} // namespace slrsm::oracle
