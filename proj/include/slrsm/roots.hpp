#pragma once

#include <limits>
#include <vector>

#include "slrsm/oracle.hpp"
#include "slrsm/problem.hpp"
#include "slrsm/sampling.hpp"

namespace slrsm {

/// mu_max extends past 0.9 N pi / sigma, where the regularizer inversion
/// becomes unreliable.
class BandExceeded : public Error {
public:
    using Error::Error;
};

/// |B_N'| is numerically zero at a refined root; flags a near-double root,
/// which contradicts the simple-spectrum structure of the problem.
class DerivativeTooSmall : public Error {
public:
    using Error::Error;
};

/// A refined zero of the approximate characteristic function.
struct RootResult {
    double mu = 0.0;             ///< refined zero, >= 0
    double eigenvalue = 0.0;     ///< mu^2
    double bracket_lo = 0.0;     ///< sign change verified across [lo, hi]
    double bracket_hi = 0.0;
    double residual = 0.0;       ///< |B_N(mu)|
    double error_estimate = std::numeric_limits<double>::quiet_NaN();
};

struct ScanDiagnostics {
    std::vector<double> skipped_points; ///< grid points where the regularizer was singular
};

/// Evaluate B_N on the grid {0, scan_step, ..., mu_max}, bracket every sign
/// change, and refine each bracket by bisection to width <= tol (and
/// residual <= tol). Results are sorted ascending in mu. mu = 0 itself is
/// accepted only when a genuine sign change straddles it.
std::vector<RootResult> scan_and_refine(const SampleTable& t, double a, double mu_max,
                                        double scan_step = 0.01, double tol = 1e-12,
                                        ScanDiagnostics* diagnostics = nullptr);

/// Fit the constant of the reconstruction-error law
///   |Delta_direct(mu) - B_N(mu)| <= C |sinc(theta mu)|^{-m} (N+1)^{-(m-1)}
/// by maximizing over an in-band grid ending at mu_hi (<= 0 selects
/// 0.85 N pi / sigma). Verifies the decay rate when compared across N at
/// fixed theta.
double fit_decay_constant(const SampleTable& t, const ProblemSpec& p,
                          const IvpConfig& ivp_cfg = oracle::reference_ivp_config(),
                          int grid_points = 50, double mu_hi = 0.0);

/// Fit the constant c4 of the full a-posteriori bound shape (Jagerman
/// factor included) against the directly integrated characteristic
/// function on an in-band grid. Feeds error_estimate.
double fit_c4(const SampleTable& t, const ProblemSpec& p,
              const IvpConfig& ivp_cfg = oracle::reference_ivp_config(), int grid_points = 50);

/// A-posteriori bound on |mu_N - mu_exact| at a refined root: the
/// truncation bound of B_N divided by |B_N'|, the derivative taken as a
/// central finite difference at mu_N (step 1e-6). Heuristic: the inf over
/// a ball around mu_N is replaced by the value at mu_N.
double error_estimate(const SampleTable& t, double a, const RootResult& root, double c4);

} // namespace slrsm
