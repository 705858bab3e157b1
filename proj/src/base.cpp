#include "slrsm/base.hpp"

#include <algorithm>
#include <numbers>

namespace slrsm {

namespace {
constexpr double kPi = std::numbers::pi;

void check_interface(double d) {
    if (!(d > 0.0 && d < kPi)) throw Error("base: interface point d must lie in (0, pi)");
}
} // namespace

std::pair<double, double> solve_left(const PotentialExpr& q, double mu, double d,
                                     const IvpConfig& cfg) {
    check_interface(d);
    const IvpResult r = integrate(q, mu * mu, 0.0, d, 1.0, 0.0, cfg);
    return {r.final.u, r.final.v};
}

std::pair<double, double> solve_right(const PotentialExpr& q, double mu, double d,
                                      const IvpConfig& cfg) {
    check_interface(d);
    const IvpResult r = integrate(q, mu * mu, kPi, d, 0.0, 1.0, cfg);
    return {r.final.u, r.final.v};
}

std::vector<IvpState> trajectory_left(const PotentialExpr& q, double mu, double d,
                                      const IvpConfig& cfg, std::span<const double> grid) {
    check_interface(d);
    const IvpResult r = integrate(q, mu * mu, 0.0, d, 1.0, 0.0, cfg, grid);
    return r.trajectory;
}

std::vector<IvpState> trajectory_right(const PotentialExpr& q, double mu, double d,
                                       const IvpConfig& cfg, std::span<const double> grid) {
    check_interface(d);
    // Integration runs pi -> d, so feed the grid in descending order.
    std::vector<double> descending(grid.rbegin(), grid.rend());
    IvpResult r = integrate(q, mu * mu, kPi, d, 0.0, 1.0, cfg, descending);
    std::reverse(r.trajectory.begin(), r.trajectory.end());
    return r.trajectory;
}

BoundaryQuad boundary_quad(const PotentialExpr& q, double mu, double d, const IvpConfig& cfg) {
    const auto [yL, dyL] = solve_left(q, mu, d, cfg);
    const auto [yR, dyR] = solve_right(q, mu, d, cfg);
    return {yL, dyL, yR, dyR, mu};
}

} // namespace slrsm
