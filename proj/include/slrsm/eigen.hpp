#pragma once

#include <span>
#include <vector>

#include <json.hpp>

#include "slrsm/ivp.hpp"
#include "slrsm/problem.hpp"

namespace slrsm {

class GridMismatch : public Error {
public:
    using Error::Error;
};

/// Both candidate denominators for alpha vanish; signals a broken root
/// upstream (a nontrivial solution cannot vanish with its derivative).
class DegenerateAlpha : public Error {
public:
    using Error::Error;
};

/// A piecewise eigenfunction: the left base solution on [0, d] and
/// alpha times the right base solution on [d, pi], sampled on uniform
/// per-side grids that both include x = d. Stored unnormalized
/// (y(0) = 1 convention); l2_norm allows normalized use.
struct Eigenpair {
    int index = 1;
    double mu = 0.0;
    double eigenvalue = 0.0; ///< mu^2
    double alpha = 0.0;
    std::vector<IvpState> grid_left;  ///< (x, y, y') on [0, d]
    std::vector<IvpState> grid_right; ///< (x, y, y') on [d, pi]
    double l2_norm = 0.0;
};

/// Integrate both base problems at a refined root mu_k and scale the right
/// part by alpha so the interface jump conditions hold. alpha uses the
/// better-conditioned of its two equivalent formulas:
///   a yL(d)/yR(d) when |yR(d)| >= |dyR(d)|, else a^{-1} dyL(d)/dyR(d).
Eigenpair assemble_eigenfunction(const ProblemSpec& p, double mu_k, int grid_pts,
                                 const IvpConfig& ivp_cfg = {}, int index = 1);

/// Pairwise inner products int_0^pi y_i y_j dx by composite Simpson,
/// integrated separately on [0, d] and [d, pi] (the integrand jumps at d).
/// Symmetric by construction. All pairs must share the same grids.
std::vector<std::vector<double>> gram_matrix(std::span<const Eigenpair> pairs);

/// Max over interior grid points (two points next to each boundary and to
/// d excluded) of |-y''_h + (q - mu^2) y| / max|y|, with y''_h the 5-point
/// central finite difference; the max of the left- and right-side values.
double residual_check(const ProblemSpec& p, const Eigenpair& pair);

/// Plot-ready document: summary fields plus per-side [x, y, yprime] rows.
nlohmann::json to_json(const Eigenpair& pair);

} // namespace slrsm
