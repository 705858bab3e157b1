#include "slrsm/eigen.hpp"

#include <cmath>
#include <numbers>

#include "slrsm/base.hpp"

namespace slrsm {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        g[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    g.front() = lo;
    g.back() = hi;
    return g;
}

// Composite Simpson on a uniform grid; a 3/8 tail handles an odd interval
// count. Values are y^2-like products supplied by f(i).
template <class F>
double simpson(std::size_t n_points, double h, F&& f) {
    if (n_points < 2) return 0.0;
    if (n_points == 2) return h / 2.0 * (f(0) + f(1)); // trapezoid fallback
    std::size_t n_int = n_points - 1;
    double total = 0.0;
    std::size_t start = 0;
    if (n_int % 2 == 1) {
        if (n_int < 3) return h / 2.0 * (f(0) + f(1));
        // 3/8 rule on the first three intervals
        total += 3.0 * h / 8.0 * (f(0) + 3.0 * f(1) + 3.0 * f(2) + f(3));
        start = 3;
        n_int -= 3;
    }
    double sum = f(start) + f(start + n_int);
    for (std::size_t i = 1; i < n_int; i += 2) sum += 4.0 * f(start + i);
    for (std::size_t i = 2; i < n_int; i += 2) sum += 2.0 * f(start + i);
    total += h / 3.0 * sum;
    return total;
}

double side_inner_product(const std::vector<IvpState>& gi, const std::vector<IvpState>& gj) {
    if (gi.size() != gj.size()) throw GridMismatch("eigen: grids of different length");
    if (gi.size() < 2) return 0.0;
    for (std::size_t k = 0; k < gi.size(); ++k)
        if (gi[k].x != gj[k].x) throw GridMismatch("eigen: grids differ at a point");
    const double h = (gi.back().x - gi.front().x) / static_cast<double>(gi.size() - 1);
    return simpson(gi.size(), h, [&](std::size_t k) { return gi[k].u * gj[k].u; });
}

double side_residual(const PotentialExpr& q, double mu_sq, const std::vector<IvpState>& grid,
                     double y_scale) {
    if (grid.size() < 5) return 0.0;
    const double h = (grid.back().x - grid.front().x) / static_cast<double>(grid.size() - 1);
    double worst = 0.0;
    for (std::size_t i = 2; i + 2 < grid.size(); ++i) {
        const double ypp = (-grid[i - 2].u + 16.0 * grid[i - 1].u - 30.0 * grid[i].u +
                            16.0 * grid[i + 1].u - grid[i + 2].u) /
                           (12.0 * h * h);
        const double r = std::fabs(-ypp + (q(grid[i].x) - mu_sq) * grid[i].u);
        worst = std::max(worst, r);
    }
    return worst / y_scale;
}

} // namespace

Eigenpair assemble_eigenfunction(const ProblemSpec& p, double mu_k, int grid_pts,
                                 const IvpConfig& ivp_cfg, int index) {
    validate(p);
    if (grid_pts < 16) throw Error("eigen: grid_pts must be >= 16");

    const PotentialExpr q = parse_potential(p.q_source);

    Eigenpair pair;
    pair.index = index;
    pair.mu = mu_k;
    pair.eigenvalue = mu_k * mu_k;
    pair.grid_left = trajectory_left(q, mu_k, p.d, ivp_cfg, linspace(0.0, p.d, grid_pts));
    pair.grid_right = trajectory_right(q, mu_k, p.d, ivp_cfg, linspace(p.d, kPi, grid_pts));

    const double yL = pair.grid_left.back().u;
    const double dyL = pair.grid_left.back().v;
    const double yR = pair.grid_right.front().u;
    const double dyR = pair.grid_right.front().v;
    if (std::fabs(yR) < 1e-12 && std::fabs(dyR) < 1e-12)
        throw DegenerateAlpha("eigen: y_R and y_R' both vanish at d for mu = " +
                              std::to_string(mu_k));

    // Two equivalent expressions at a true root; pick the better conditioned.
    pair.alpha = std::fabs(yR) >= std::fabs(dyR) ? p.a * yL / yR : (1.0 / p.a) * dyL / dyR;

    for (auto& s : pair.grid_right) {
        s.u *= pair.alpha;
        s.v *= pair.alpha;
    }

    const double norm_sq = side_inner_product(pair.grid_left, pair.grid_left) +
                           side_inner_product(pair.grid_right, pair.grid_right);
    pair.l2_norm = std::sqrt(norm_sq);
    return pair;
}

std::vector<std::vector<double>> gram_matrix(std::span<const Eigenpair> pairs) {
    const std::size_t n = pairs.size();
    std::vector<std::vector<double>> g(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const double value = side_inner_product(pairs[i].grid_left, pairs[j].grid_left) +
                                 side_inner_product(pairs[i].grid_right, pairs[j].grid_right);
            g[i][j] = value;
            g[j][i] = value; // symmetric by construction
        }
    }
    return g;
}

double residual_check(const ProblemSpec& p, const Eigenpair& pair) {
    validate(p);
    const PotentialExpr q = parse_potential(p.q_source);
    double y_max = 0.0;
    for (const auto& s : pair.grid_left) y_max = std::max(y_max, std::fabs(s.u));
    for (const auto& s : pair.grid_right) y_max = std::max(y_max, std::fabs(s.u));
    if (y_max == 0.0) return 0.0;
    return std::max(side_residual(q, pair.eigenvalue, pair.grid_left, y_max),
                    side_residual(q, pair.eigenvalue, pair.grid_right, y_max));
}

nlohmann::json to_json(const Eigenpair& pair) {
    auto side = [](const std::vector<IvpState>& grid) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& s : grid) rows.push_back({s.x, s.u, s.v});
        return rows;
    };
    return nlohmann::json{{"index", pair.index},
                          {"mu", pair.mu},
                          {"eigenvalue", pair.eigenvalue},
                          {"alpha", pair.alpha},
                          {"l2_norm", pair.l2_norm},
                          {"left", side(pair.grid_left)},
                          {"right", side(pair.grid_right)}};
}

} // namespace slrsm
