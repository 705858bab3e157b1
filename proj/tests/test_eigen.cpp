#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "slrsm/eigen.hpp"
#include "slrsm/roots.hpp"

using namespace slrsm;

namespace {
constexpr double kPi = std::numbers::pi;

ProblemSpec reference_problem() {
    ProblemSpec p;
    p.q_source = "x";
    p.a = 2.0;
    p.d = 1.0;
    return p;
}

std::vector<RootResult> reference_roots() {
    const ProblemSpec p = reference_problem();
    const SampleTable t = build_sample_table(p, make_sampling_config(40, 6, 1.0));
    return scan_and_refine(t, p.a, 4.0);
}

// Exact eigenfunction cos(mu x) of the classical q = 0, a = 1 problem,
// sampled on the uniform per-side grids.
Eigenpair synthetic_cos_pair(double mu, double d, int grid_pts) {
    Eigenpair pair;
    pair.index = 1;
    pair.mu = mu;
    pair.eigenvalue = mu * mu;
    pair.alpha = 1.0;
    for (int i = 0; i < grid_pts; ++i) {
        const double xl = d * i / (grid_pts - 1);
        pair.grid_left.push_back({xl, std::cos(mu * xl), -mu * std::sin(mu * xl)});
        const double xr = d + (kPi - d) * i / (grid_pts - 1);
        pair.grid_right.push_back({xr, std::cos(mu * xr), -mu * std::sin(mu * xr)});
    }
    return pair;
}
} // namespace

TEST_CASE("classical continuous case reduces to cos(x/2)") {
    ProblemSpec p;
    p.q_source = "0";
    p.a = 1.0;
    p.d = 1.0;
    const Eigenpair pair = assemble_eigenfunction(p, 0.5, 33);
    REQUIRE(pair.grid_left.size() == 33);
    REQUIRE(pair.grid_right.size() == 33);
    CHECK(pair.grid_left.front().x == 0.0);
    CHECK(pair.grid_left.back().x == 1.0);
    CHECK(pair.grid_right.front().x == 1.0);
    CHECK(pair.grid_right.back().x == kPi);
    for (const auto& s : pair.grid_left)
        CHECK(s.u == doctest::Approx(std::cos(0.5 * s.x)).epsilon(1e-10));
    for (const auto& s : pair.grid_right)
        CHECK(s.u == doctest::Approx(std::cos(0.5 * s.x)).scale(1.0).epsilon(1e-10));
    // alpha = a yL(d)/yR(d) for the dominant-|yR| branch
    const double yR_raw = -std::sin(0.5 * (kPi - 1.0)) / 0.5;
    CHECK(pair.alpha == doctest::Approx(std::cos(0.5) / yR_raw).epsilon(1e-9));
}

TEST_CASE("transmission conditions hold at the computed roots") {
    const ProblemSpec p = reference_problem();
    for (const auto& root : reference_roots()) {
        const Eigenpair pair = assemble_eigenfunction(p, root.mu, 65);
        const double jump_y = pair.grid_right.front().u / pair.grid_left.back().u;
        const double jump_dy = pair.grid_right.front().v / pair.grid_left.back().v;
        CHECK(jump_y == doctest::Approx(p.a).epsilon(1e-8));
        CHECK(jump_dy == doctest::Approx(1.0 / p.a).epsilon(1e-8));
        // right boundary y(pi) = 0, left boundary y'(0) = 0
        CHECK(std::fabs(pair.grid_right.back().u) <= 1e-8);
        CHECK(std::fabs(pair.grid_left.front().v) <= 1e-8);
        CHECK(pair.grid_left.front().u == 1.0); // y_L(0) = 1 convention
    }
}

TEST_CASE("both alpha formulas agree at accepted roots") {
    const ProblemSpec p = reference_problem();
    const PotentialExpr q = parse_potential(p.q_source);
    for (const auto& root : reference_roots()) {
        const BoundaryQuad bq = boundary_quad(q, root.mu, p.d);
        const double alpha1 = p.a * bq.yL / bq.yR;
        const double alpha2 = (1.0 / p.a) * bq.dyL / bq.dyR;
        CHECK(alpha1 == doctest::Approx(alpha2).epsilon(1e-8));
    }
}

TEST_CASE("gram matrix: cosine orthogonality for the classical problem") {
    ProblemSpec p;
    p.q_source = "0";
    p.a = 1.0;
    p.d = 1.0;
    std::vector<Eigenpair> pairs;
    for (int k = 1; k <= 3; ++k)
        pairs.push_back(assemble_eigenfunction(p, k - 0.5, 513, {}, k));
    const auto g = gram_matrix(pairs);
    REQUIRE(g.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(g[i][i] > 0.0);
        CHECK(g[i][i] == doctest::Approx(kPi / 2.0).epsilon(1e-8)); // int cos^2((k-1/2)x)
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(g[i][j] == g[j][i]); // exact symmetry
            if (i != j) CHECK(std::fabs(g[i][j]) / std::sqrt(g[i][i] * g[j][j]) <= 1e-10);
        }
    }
    // l2_norm field matches the diagonal
    CHECK(pairs[0].l2_norm == doctest::Approx(std::sqrt(g[0][0])).epsilon(1e-12));
}

TEST_CASE("gram handles odd interval counts") {
    // 18 points per side = 17 intervals, exercising the 3/8-rule tail
    ProblemSpec p;
    p.q_source = "0";
    p.a = 1.0;
    p.d = 1.0;
    std::vector<Eigenpair> pairs{assemble_eigenfunction(p, 0.5, 18)};
    const auto g = gram_matrix(pairs);
    CHECK(g[0][0] == doctest::Approx(kPi / 2.0).epsilon(1e-3));
}

TEST_CASE("gram matrix rejects mismatched grids") {
    ProblemSpec p;
    p.q_source = "0";
    p.a = 1.0;
    p.d = 1.0;
    std::vector<Eigenpair> pairs;
    pairs.push_back(assemble_eigenfunction(p, 0.5, 65));
    pairs.push_back(assemble_eigenfunction(p, 1.5, 33));
    CHECK_THROWS_AS(gram_matrix(pairs), GridMismatch);
}

TEST_CASE("scaling an eigenpair scales the gram entries quadratically") {
    ProblemSpec p;
    p.q_source = "0";
    p.a = 1.0;
    p.d = 1.0;
    Eigenpair pair = assemble_eigenfunction(p, 1.5, 129);
    std::vector<Eigenpair> one{pair};
    const auto g1 = gram_matrix(one);
    const double res1 = residual_check(p, pair);

    for (auto& s : pair.grid_left) {
        s.u *= 3.0;
        s.v *= 3.0;
    }
    for (auto& s : pair.grid_right) {
        s.u *= 3.0;
        s.v *= 3.0;
    }
    std::vector<Eigenpair> scaled{pair};
    const auto g9 = gram_matrix(scaled);
    CHECK(g9[0][0] == doctest::Approx(9.0 * g1[0][0]).epsilon(1e-13));
    CHECK(residual_check(p, pair) == doctest::Approx(res1).epsilon(1e-12));
}

TEST_CASE("residual of an exact eigenfunction is finite-difference noise") {
    ProblemSpec p;
    p.q_source = "0";
    p.a = 1.0;
    p.d = 1.0;
    const Eigenpair coarse = synthetic_cos_pair(5.5, 1.0, 513);
    const double res = residual_check(p, coarse);
    CHECK(res <= 1e-6);
    // 5-point stencil truncation scales like h^4
    const Eigenpair fine = synthetic_cos_pair(5.5, 1.0, 1025);
    const double res_fine = residual_check(p, fine);
    CHECK(res / res_fine >= 8.0);
}

TEST_CASE("residual of assembled eigenfunctions") {
    const ProblemSpec p = reference_problem();
    const auto roots = reference_roots();
    const Eigenpair pair = assemble_eigenfunction(p, roots[0].mu, 513);
    CHECK(residual_check(p, pair) <= 1e-5);
}

TEST_CASE("corrupting one side is invisible to the per-side residual") {
    const ProblemSpec p = reference_problem();
    const auto roots = reference_roots();
    Eigenpair pair = assemble_eigenfunction(p, roots[0].mu, 513);
    const double res_before = residual_check(p, pair);
    const double jump_before = pair.grid_right.front().u / pair.grid_left.back().u;
    CHECK(jump_before == doctest::Approx(p.a).epsilon(1e-8));

    for (auto& s : pair.grid_right) { // break the transmission condition only
        s.u *= 2.0;
        s.v *= 2.0;
    }
    const double res_after = residual_check(p, pair);
    CHECK(res_after == doctest::Approx(res_before).epsilon(1e-10));
    const double jump_after = pair.grid_right.front().u / pair.grid_left.back().u;
    CHECK(jump_after == doctest::Approx(2.0 * p.a).epsilon(1e-8)); // invariant now fails
}

TEST_CASE("assembly guards") {
    const ProblemSpec p = reference_problem();
    CHECK_THROWS_AS(assemble_eigenfunction(p, 1.0, 8), Error); // grid too small
}
