#include "slrsm/oracle.hpp"

#include <cmath>

#include "slrsm/base.hpp"
#include "slrsm/rootscan.hpp"

namespace slrsm::oracle {

IvpConfig reference_ivp_config() {
    IvpConfig cfg;
    cfg.abs_tol = 1e-13;
    cfg.rel_tol = 1e-13;
    return cfg;
}

double delta_direct(const ProblemSpec& p, double mu, const IvpConfig& cfg) {
    validate(p);
    const PotentialExpr q = parse_potential(p.q_source);
    const BoundaryQuad bq = boundary_quad(q, mu, p.d, cfg);
    return p.a * bq.yL * bq.dyR - (1.0 / p.a) * bq.dyL * bq.yR;
}

double closed_form_q0(double a, double d, double mu) {
    const double pi = std::numbers::pi;
    return a * std::cos(mu * d) * std::cos(mu * (pi - d)) -
           (1.0 / a) * std::sin(mu * d) * std::sin(mu * (pi - d));
}

namespace {

OracleResult scan_function(const std::function<double(double)>& f, double mu_max,
                           double scan_step, double tol, Method method) {
    const std::vector<double> grid = rootscan::uniform_grid(mu_max, scan_step);
    OracleResult out;
    out.scan_step = scan_step;
    out.tol = tol;
    out.method = method;
    for (const auto& b : rootscan::scan(f, grid))
        out.zeros.push_back(rootscan::bisect(f, b, tol, tol));
    return out;
}

} // namespace

OracleResult find_zeros_direct(const ProblemSpec& p, double mu_max, double scan_step, double tol,
                               const IvpConfig& cfg) {
    validate(p);
    const PotentialExpr q = parse_potential(p.q_source);
    auto f = [&](double mu) {
        const BoundaryQuad bq = boundary_quad(q, mu, p.d, cfg);
        return p.a * bq.yL * bq.dyR - (1.0 / p.a) * bq.dyL * bq.yR;
    };
    return scan_function(f, mu_max, scan_step, tol, Method::direct_shooting);
}

OracleResult find_zeros_q0(double a, double d, double mu_max, double scan_step, double tol) {
    auto f = [=](double mu) { return closed_form_q0(a, d, mu); };
    return scan_function(f, mu_max, scan_step, tol, Method::closed_form_q0);
}

} // namespace slrsm::oracle
