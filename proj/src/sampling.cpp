#include "slrsm/sampling.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>

#include "parallel.hpp"

namespace slrsm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNodeSnap = 1e-13;
constexpr double kSincGuard = 1e-8;

double ipow(double base, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= base;
    return r;
}

// FNV-1a, 64 bit.
std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

void append_double(std::string& s, const char* key, double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "|%s=%a", key, v);
    s += buf;
}

} // namespace

SamplingConfig make_sampling_config(int N, int m, double d, double theta) {
    SamplingConfig cfg;
    cfg.N = N;
    cfg.m = m;
    cfg.d = d;
    cfg.sigma0 = std::max(d, kPi - d);
    if (theta <= 0.0) {
        if (N <= m) throw Error("sampling: default theta needs N > m");
        theta = cfg.sigma0 / static_cast<double>(N - m);
    }
    cfg.theta = theta;
    cfg.sigma = cfg.sigma0 + static_cast<double>(m) * theta;
    validate(cfg);
    return cfg;
}

void validate(const SamplingConfig& cfg) {
    if (cfg.N < 8) throw Error("sampling: N must be >= 8");
    if (cfg.m < 2) throw Error("sampling: m must be >= 2");
    if (!(cfg.d > 0.0 && cfg.d < kPi)) throw Error("sampling: d must lie in (0, pi)");
    if (!(cfg.theta > 0.0)) throw Error("sampling: theta must be positive");
    if (cfg.sigma != cfg.sigma0 + static_cast<double>(cfg.m) * cfg.theta)
        throw Error("sampling: sigma must equal sigma0 + m theta");
    if (cfg.sigma0 != std::max(cfg.d, kPi - cfg.d))
        throw Error("sampling: sigma0 must equal max{d, pi - d}");
}

const std::vector<double>& h_values(const SampleTable& t, Hkl which) {
    switch (which) {
        case Hkl::h11: return t.h11;
        case Hkl::h12: return t.h12;
        case Hkl::h21: return t.h21;
        case Hkl::h22: return t.h22;
    }
    throw Error("sampling: bad h selector");
}

double sinc(double z) {
    const double za = std::fabs(z); // evenness, bitwise
    if (za < 1e-4) {
        const double z2 = za * za;
        return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sin(za) / za;
}

std::complex<double> sinc(std::complex<double> z) {
    if (std::abs(z) < 1e-4) {
        const std::complex<double> z2 = z * z;
        return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sin(z) / z;
}

std::string problem_hash(const ProblemSpec& p, const SamplingConfig& cfg,
                         const IvpConfig& ivp_cfg) {
    std::string s = "q=" + p.q_source;
    append_double(s, "a", p.a);
    append_double(s, "d", p.d);
    s += "|N=" + std::to_string(cfg.N) + "|m=" + std::to_string(cfg.m);
    append_double(s, "theta", cfg.theta);
    append_double(s, "sigma", cfg.sigma);
    append_double(s, "abs_tol", ivp_cfg.abs_tol);
    append_double(s, "rel_tol", ivp_cfg.rel_tol);
    append_double(s, "h_init", ivp_cfg.h_init);
    append_double(s, "h_min", ivp_cfg.h_min);
    s += "|max_steps=" + std::to_string(ivp_cfg.max_steps);

    char out[17];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(fnv1a(s)));
    return out;
}

SampleTable build_sample_table(const ProblemSpec& p, const SamplingConfig& cfg,
                               const IvpConfig& ivp_cfg) {
    validate(p);
    validate(cfg);
    if (cfg.d != p.d) throw Error("sampling: config d differs from problem d");

    const PotentialExpr q = parse_potential(p.q_source);
    const std::size_t count = static_cast<std::size_t>(cfg.N) + 1;

    SampleTable t;
    t.cfg = cfg;
    t.nodes.resize(count);
    t.h11.resize(count);
    t.h12.resize(count);
    t.h21.resize(count);
    t.h22.resize(count);

    const double back = kPi - cfg.d;
    detail::parallel_for_index(count, [&](std::size_t j) {
        const double mu = cfg.node(static_cast<int>(j));
        const BoundaryQuad bq = boundary_quad(q, mu, cfg.d, ivp_cfg);
        const double reg = ipow(sinc(cfg.theta * mu), cfg.m);
        t.nodes[j] = mu;
        t.h11[j] = reg * (bq.yL - std::cos(mu * cfg.d));
        t.h12[j] = reg * (bq.dyL + mu * std::sin(mu * cfg.d));
        t.h21[j] = reg * (bq.yR + back * sinc(mu * back));
        t.h22[j] = reg * (bq.dyR - std::cos(mu * back));
    });

    t.problem_hash = problem_hash(p, cfg, ivp_cfg);
    return t;
}

double cardinal_series(const SampleTable& t, Hkl which, double mu) {
    const SamplingConfig& cfg = t.cfg;
    const std::vector<double>& h = h_values(t, which);
    const double band = cfg.band();

    // Exact node hit (either sign) returns the stored sample. Checked ahead
    // of the band test: the outermost node sits exactly on the band edge.
    if (std::fabs(mu) <= band + 1.0) {
        const long jr = std::lround(mu * cfg.sigma / kPi);
        const std::size_t ja = static_cast<std::size_t>(jr < 0 ? -jr : jr);
        if (ja < t.nodes.size()) {
            const double node = jr < 0 ? -t.nodes[ja] : t.nodes[ja];
            if (std::fabs(mu - node) < kNodeSnap) return h[ja];
        }
    }

    if (!(std::fabs(mu) < band))
        throw OutOfBand("sampling: mu = " + std::to_string(mu) + " outside band " +
                        std::to_string(band));

    double sum = h[0] * sinc(cfg.sigma * mu);
    for (std::size_t j = 1; j < t.nodes.size(); ++j)
        sum += h[j] * (sinc(cfg.sigma * (mu - t.nodes[j])) + sinc(cfg.sigma * (mu + t.nodes[j])));
    return sum;
}

BoundaryQuad reconstruct_quad(const SampleTable& t, double mu) {
    const SamplingConfig& cfg = t.cfg;
    const double r = sinc(cfg.theta * mu);
    if (std::fabs(r) < kSincGuard)
        throw SingularRegularizer("sampling: sinc(theta mu) = " + std::to_string(r) +
                                  " at mu = " + std::to_string(mu));
    const double reg = ipow(r, cfg.m);

    const double h11 = cardinal_series(t, Hkl::h11, mu);
    const double h12 = cardinal_series(t, Hkl::h12, mu);
    const double h21 = cardinal_series(t, Hkl::h21, mu);
    const double h22 = cardinal_series(t, Hkl::h22, mu);

    const double back = kPi - cfg.d;
    BoundaryQuad bq;
    bq.mu = mu;
    bq.yL = h11 / reg + std::cos(mu * cfg.d);
    bq.dyL = h12 / reg - mu * std::sin(mu * cfg.d);
    bq.yR = h21 / reg - back * sinc(mu * back);
    bq.dyR = h22 / reg + std::cos(mu * back);
    return bq;
}

double characteristic_B_N(const SampleTable& t, double a, double mu) {
    if (!(a > 0.0)) throw Error("sampling: jump factor a must be positive");
    const BoundaryQuad bq = reconstruct_quad(t, mu);
    return a * bq.yL * bq.dyR - (1.0 / a) * bq.dyL * bq.yR;
}

double truncation_bound(const SampleTable& t, Hkl which, double mu) {
    const SamplingConfig& cfg = t.cfg;
    const double band = cfg.band();
    if (!(std::fabs(mu) < band))
        throw OutOfBand("sampling: mu = " + std::to_string(mu) + " outside band " +
                        std::to_string(band));

    const std::vector<double>& h = h_values(t, which);

    // || mu^{m-1} h ||_2 via a Riemann sum over the stored samples
    // (spacing pi/sigma, negative nodes folded in by evenness).
    double norm_sq = 0.0;
    for (std::size_t j = 1; j < t.nodes.size(); ++j) {
        const double w = ipow(t.nodes[j], cfg.m - 1) * h[j];
        norm_sq += 2.0 * w * w;
    }
    norm_sq *= kPi / cfg.sigma;
    const double norm = std::sqrt(norm_sq);

    const double spacing_pow = ipow(kPi / cfg.sigma, cfg.m - 1);
    const double edge = 1.0 / std::sqrt(band - mu) + 1.0 / std::sqrt(band + mu);
    const double n_pow = ipow(static_cast<double>(cfg.N + 1), cfg.m - 1);
    // |sin(sigma mu)| is the factor that vanishes at every sampling node;
    // it modulates the truncation remainder exactly.
    return std::fabs(std::sin(cfg.sigma * mu)) * norm /
           (kPi * spacing_pow * std::sqrt(1.0 - std::pow(4.0, 1 - cfg.m))) * edge / n_pow;
}

nlohmann::json to_json(const SampleTable& t) {
    return nlohmann::json{{"schema_version", 1},
                          {"kind", "sample_table"},
                          {"config",
                           {{"N", t.cfg.N},
                            {"m", t.cfg.m},
                            {"d", t.cfg.d},
                            {"sigma0", t.cfg.sigma0},
                            {"theta", t.cfg.theta},
                            {"sigma", t.cfg.sigma}}},
                          {"nodes", t.nodes},
                          {"h11", t.h11},
                          {"h12", t.h12},
                          {"h21", t.h21},
                          {"h22", t.h22},
                          {"problem_hash", t.problem_hash}};
}

SampleTable table_from_json(const nlohmann::json& j) {
    if (j.value("schema_version", 0) != 1 || j.value("kind", "") != "sample_table")
        throw Error("sampling: unrecognized sample-table document");
    SampleTable t;
    const auto& c = j.at("config");
    t.cfg.N = c.at("N").get<int>();
    t.cfg.m = c.at("m").get<int>();
    t.cfg.d = c.at("d").get<double>();
    t.cfg.sigma0 = c.at("sigma0").get<double>();
    t.cfg.theta = c.at("theta").get<double>();
    t.cfg.sigma = c.at("sigma").get<double>();
    validate(t.cfg);
    j.at("nodes").get_to(t.nodes);
    j.at("h11").get_to(t.h11);
    j.at("h12").get_to(t.h12);
    j.at("h21").get_to(t.h21);
    j.at("h22").get_to(t.h22);
    t.problem_hash = j.at("problem_hash").get<std::string>();
    const std::size_t count = static_cast<std::size_t>(t.cfg.N) + 1;
    if (t.nodes.size() != count || t.h11.size() != count || t.h12.size() != count ||
        t.h21.size() != count || t.h22.size() != count)
        throw Error("sampling: sample-table arrays have the wrong length");
    return t;
}

} // namespace slrsm
