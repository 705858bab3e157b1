#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <numbers>
#include <random>
#include <vector>

#include "slrsm/base.hpp"
#include "slrsm/sampling.hpp"

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

const SampleTable& reference_table() {
    static const SampleTable t =
        build_sample_table(reference_problem(), make_sampling_config(40, 6, 1.0));
    return t;
}
} // namespace

TEST_CASE("sinc handles the removable singularity") {
    CHECK(sinc(0.0) == 1.0);
    CHECK(std::fabs(sinc(kPi)) <= 1e-15);
    CHECK(std::fabs(sinc(1e-5) - (1.0 - 1e-10 / 6.0)) <= 1e-18);
    CHECK(sinc(0.5) == doctest::Approx(std::sin(0.5) / 0.5).epsilon(1e-15));
    // evenness must be bitwise
    for (double z : {1e-6, 0.3, 2.9, 17.0}) {
        const double plus = sinc(z), minus = sinc(-z);
        CHECK(std::memcmp(&plus, &minus, sizeof plus) == 0);
    }
    const std::complex<double> i(0.0, 1.0);
    CHECK(sinc(i).real() == doctest::Approx(std::sinh(1.0)).epsilon(1e-14));
    CHECK(std::abs(sinc(std::complex<double>(1e-5, 0.0)) -
                   std::complex<double>(sinc(1e-5), 0.0)) <= 1e-18);
}

TEST_CASE("sampling config invariants") {
    const SamplingConfig cfg = make_sampling_config(40, 6, 1.0);
    CHECK(cfg.sigma0 == std::max(1.0, kPi - 1.0));
    CHECK(cfg.sigma == cfg.sigma0 + 6.0 * cfg.theta);
    // default theta puts the first sinc singularity exactly at the band edge
    CHECK(kPi / cfg.theta == doctest::Approx(cfg.band()).epsilon(1e-12));

    CHECK_THROWS_AS(make_sampling_config(7, 6, 1.0), Error);   // N too small
    CHECK_THROWS_AS(make_sampling_config(40, 1, 1.0), Error);  // m too small
    CHECK_THROWS_AS(make_sampling_config(40, 6, -0.1), Error); // d out of range
    CHECK_THROWS_AS(make_sampling_config(40, 6, 3.5), Error);
    CHECK_THROWS_AS(make_sampling_config(8, 8, 1.0), Error); // default theta needs N > m

    SamplingConfig broken = cfg;
    broken.sigma = cfg.sigma * 1.001;
    CHECK_THROWS_AS(validate(broken), Error);
}

TEST_CASE("q = 0 tables vanish and the linear-potential table decays") {
    ProblemSpec z;
    z.q_source = "0";
    z.a = 2.0;
    z.d = 1.0;
    const SampleTable t0 = build_sample_table(z, make_sampling_config(40, 6, 1.0));
    CHECK(t0.h11[0] == 0.0); // mu = 0 solves are exact for q = 0
    for (std::size_t j = 0; j < t0.nodes.size(); ++j) {
        CHECK(std::fabs(t0.h11[j]) <= 1e-10);
        CHECK(std::fabs(t0.h12[j]) <= 1e-10);
        CHECK(std::fabs(t0.h21[j]) <= 1e-10);
        CHECK(std::fabs(t0.h22[j]) <= 1e-10);
    }

    const SampleTable& t = reference_table();
    REQUIRE(t.nodes.size() == 41);
    // Decay per the (1 + theta mu)^{-m} envelope: the normalized sequence
    // must not grow toward the band edge. The upper-half max stays under
    // 10x the overall median; h21 decays one extra order, which skews an
    // all-sample spread test but not this one.
    for (Hkl which : {Hkl::h11, Hkl::h12, Hkl::h21, Hkl::h22}) {
        const auto& h = h_values(t, which);
        std::vector<double> g;
        for (std::size_t j = 0; j < h.size(); ++j)
            g.push_back(std::pow(1.0 + t.cfg.theta * t.nodes[j], t.cfg.m) * std::fabs(h[j]));
        std::vector<double> sorted = g;
        std::sort(sorted.begin(), sorted.end());
        const double median = sorted[sorted.size() / 2];
        double bulk_max = 0.0, tail_max = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j)
            (j > g.size() / 2 ? tail_max : bulk_max) =
                std::max(j > g.size() / 2 ? tail_max : bulk_max, g[j]);
        CHECK(tail_max <= 10.0 * median);
        CHECK(tail_max <= bulk_max);
    }
}

TEST_CASE("build rejects a mismatched interface point") {
    CHECK_THROWS_AS(build_sample_table(reference_problem(), make_sampling_config(40, 6, 1.5)), Error);
}

TEST_CASE("cardinal series is exact at nodes and bitwise even") {
    const SampleTable& t = reference_table();
    for (Hkl which : {Hkl::h11, Hkl::h12, Hkl::h21, Hkl::h22}) {
        const auto& h = h_values(t, which);
        for (std::size_t j = 0; j < t.nodes.size(); ++j)
            CHECK(cardinal_series(t, which, t.nodes[j]) == h[j]);
    }
    for (double mu : {0.37, 2.9, 11.3, 40.1}) {
        const double plus = cardinal_series(t, Hkl::h12, mu);
        const double minus = cardinal_series(t, Hkl::h12, -mu);
        CHECK(std::memcmp(&plus, &minus, sizeof plus) == 0);
    }
    // the outermost node sits exactly on the band edge and stays reachable
    CHECK(cardinal_series(t, Hkl::h11, t.cfg.band()) == t.h11.back());
    CHECK_THROWS_AS(cardinal_series(t, Hkl::h11, t.cfg.band() + 0.1), OutOfBand);
    CHECK_THROWS_AS(cardinal_series(t, Hkl::h11, -t.cfg.band() - 1.0), OutOfBand);
}

TEST_CASE("synthetic bandlimited function: reconstruction and bound") {
    // h(mu) = sinc(sigma0 mu) lies in PW_{sigma0} subset PW_sigma, so the
    // truncated series must reproduce it within the truncation bound.
    SampleTable t = reference_table();
    const double s0 = t.cfg.sigma0;
    for (std::size_t j = 0; j < t.nodes.size(); ++j) {
        const double v = sinc(s0 * t.nodes[j]);
        t.h11[j] = v;
        t.h12[j] = v;
        t.h21[j] = v;
        t.h22[j] = v;
    }

    const double at = cardinal_series(t, Hkl::h11, 0.37);
    const double expected = sinc(s0 * 0.37);
    CHECK(std::fabs(at - expected) <= truncation_bound(t, Hkl::h11, 0.37));
    CHECK(at == doctest::Approx(expected).epsilon(1e-4));

    std::mt19937 rng(20260808);
    std::uniform_real_distribution<double> pick(0.0, 0.98 * t.cfg.band());
    for (int k = 0; k < 20; ++k) {
        const double mu = pick(rng);
        const double measured = std::fabs(cardinal_series(t, Hkl::h11, mu) - sinc(s0 * mu));
        CHECK(measured <= truncation_bound(t, Hkl::h11, mu));
    }
}

TEST_CASE("reconstructed quad matches closed forms for q = 0") {
    ProblemSpec z;
    z.q_source = "0";
    z.a = 2.0;
    z.d = 1.0;
    IvpConfig tight;
    tight.abs_tol = tight.rel_tol = 1e-13;
    const SampleTable t = build_sample_table(z, make_sampling_config(40, 6, 1.0), tight);
    const double back = kPi - 1.0;
    for (double mu : {0.3, 1.7, 4.9, 8.3}) {
        const BoundaryQuad bq = reconstruct_quad(t, mu);
        const double tol = 1e-12 * (1.0 + mu); // the quad itself scales with mu
        CHECK(std::fabs(bq.yL - std::cos(mu)) <= tol);
        CHECK(std::fabs(bq.dyL + mu * std::sin(mu)) <= tol);
        CHECK(std::fabs(bq.yR + back * sinc(mu * back)) <= tol);
        CHECK(std::fabs(bq.dyR - std::cos(mu * back)) <= tol);
    }
}

TEST_CASE("reconstruction at nodes reproduces the integrated quad") {
    const SampleTable& t = reference_table();
    const PotentialExpr q = parse_potential("x");
    for (std::size_t j = 0; j < t.nodes.size() - 1; ++j) { // last node sits on the sinc zero
        const BoundaryQuad direct = boundary_quad(q, t.nodes[j], 1.0);
        const BoundaryQuad recon = reconstruct_quad(t, t.nodes[j]);
        const double tol = 1e-10 + 1e-10 * std::fabs(t.nodes[j]);
        CHECK(std::fabs(direct.yL - recon.yL) <= tol);
        CHECK(std::fabs(direct.dyL - recon.dyL) <= tol);
        CHECK(std::fabs(direct.yR - recon.yR) <= tol);
        CHECK(std::fabs(direct.dyR - recon.dyR) <= tol);
    }
}

TEST_CASE("regularizer singularities are guarded") {
    const SampleTable& t = reference_table();
    // default theta: pi/theta equals the band edge; the sinc guard fires first
    CHECK_THROWS_AS(reconstruct_quad(t, kPi / t.cfg.theta), SingularRegularizer);

    // a wider theta pulls the singularity strictly inside the band
    ProblemSpec p = reference_problem();
    const SamplingConfig wide =
        make_sampling_config(40, 6, 1.0, 2.0 * make_sampling_config(40, 6, 1.0).theta);
    CHECK(kPi / wide.theta < wide.band());
    const SampleTable tw = build_sample_table(p, wide);
    CHECK_THROWS_AS(reconstruct_quad(tw, kPi / wide.theta), SingularRegularizer);
    CHECK_NOTHROW(reconstruct_quad(tw, 0.5 * kPi / wide.theta));
}

TEST_CASE("approximate characteristic function") {
    ProblemSpec z;
    z.q_source = "0";
    z.a = 1.0;
    z.d = 1.0;
    const SampleTable t1 = build_sample_table(z, make_sampling_config(40, 6, 1.0));
    CHECK(std::fabs(characteristic_B_N(t1, 1.0, 0.5)) <= 1e-10); // cos(pi/2)

    z.a = 2.0;
    const SampleTable t2 = build_sample_table(z, make_sampling_config(40, 6, 1.0));
    const double expected = 2.0 * std::cos(1.0) * std::cos(kPi - 1.0) -
                            0.5 * std::sin(1.0) * std::sin(kPi - 1.0);
    CHECK(characteristic_B_N(t2, 2.0, 1.0) == doctest::Approx(expected).epsilon(1e-10));

    // linear-potential problem: B_N nearly vanishes at the first tabulated root
    CHECK(std::fabs(characteristic_B_N(reference_table(), 2.0, 1.227885469249)) <= 1e-8);
}

TEST_CASE("truncation bound: zero at mu = 0 and decreasing in N") {
    const SampleTable& t = reference_table();
    CHECK(truncation_bound(t, Hkl::h11, 0.0) == 0.0);
    CHECK_THROWS_AS(truncation_bound(t, Hkl::h11, t.cfg.band() + 0.1), OutOfBand);

    // Fixed theta isolates the truncation count; mu = N pi / (2 sigma) of
    // the shared configuration (a node, where both bounds nearly vanish)
    // plus an off-node point.
    ProblemSpec p = reference_problem();
    const SamplingConfig c20 = make_sampling_config(20, 6, 1.0);
    const SamplingConfig c40 = make_sampling_config(40, 6, 1.0, c20.theta);
    const SampleTable t20 = build_sample_table(p, c20);
    const SampleTable t40 = build_sample_table(p, c40);
    for (double mu : {c20.node(20) / 2.0, c20.node(20) / 2.0 + 0.37}) {
        for (Hkl which : {Hkl::h11, Hkl::h12, Hkl::h21, Hkl::h22}) {
            const double b20 = truncation_bound(t20, which, mu);
            const double b40 = truncation_bound(t40, which, mu);
            CHECK(b20 > 0.0);
            CHECK(b40 > 0.0);
            CHECK(b40 < b20);
        }
    }
}

TEST_CASE("sample table JSON round trip") {
    const SampleTable& t = reference_table();
    const SampleTable back = table_from_json(to_json(t));
    CHECK(back.problem_hash == t.problem_hash);
    CHECK(back.cfg.sigma == t.cfg.sigma);
    REQUIRE(back.nodes.size() == t.nodes.size());
    for (std::size_t j = 0; j < t.nodes.size(); ++j) {
        CHECK(back.nodes[j] == t.nodes[j]);
        CHECK(back.h11[j] == t.h11[j]);
        CHECK(back.h12[j] == t.h12[j]);
        CHECK(back.h21[j] == t.h21[j]);
        CHECK(back.h22[j] == t.h22[j]);
    }
    nlohmann::json bad = to_json(t);
    bad["schema_version"] = 99;
    CHECK_THROWS_AS(table_from_json(bad), Error);
}

TEST_CASE("problem hash tracks every input that matters") {
    const ProblemSpec p = reference_problem();
    const SamplingConfig cfg = make_sampling_config(40, 6, 1.0);
    const IvpConfig ivp;
    const std::string base = problem_hash(p, cfg, ivp);
    CHECK(base.size() == 16);

    ProblemSpec p2 = p;
    p2.q_source = "x+0";
    CHECK(problem_hash(p2, cfg, ivp) != base);
    p2 = p;
    p2.a = 2.5;
    CHECK(problem_hash(p2, cfg, ivp) != base);

    CHECK(problem_hash(p, make_sampling_config(41, 6, 1.0), ivp) != base);
    CHECK(problem_hash(p, make_sampling_config(40, 7, 1.0), ivp) != base);
    CHECK(problem_hash(p, make_sampling_config(40, 6, 1.0, 0.9 * cfg.theta), ivp) != base);

    IvpConfig ivp2;
    ivp2.abs_tol = 1e-11;
    CHECK(problem_hash(p, cfg, ivp2) != base);
    ivp2 = ivp;
    ivp2.rel_tol = 1e-11;
    CHECK(problem_hash(p, cfg, ivp2) != base);

    // label is presentation only; d is covered through the sampling config
    ProblemSpec p3 = p;
    p3.label = "renamed";
    CHECK(problem_hash(p3, cfg, ivp) == base);
}
