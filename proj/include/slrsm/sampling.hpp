#pragma once

#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

#include "slrsm/base.hpp"
#include "slrsm/ivp.hpp"
#include "slrsm/problem.hpp"

namespace slrsm {

/// Requested mu lies outside the reliable band |mu| < N pi / sigma.
class OutOfBand : public Error {
public:
    using Error::Error;
};

/// sinc(theta mu) is too close to zero to divide by its m-th power.
class SingularRegularizer : public Error {
public:
    using Error::Error;
};

/// Sampling parameters. sigma0 = max{d, pi - d} is the exponential type of
/// the boundary functions; multiplying by sinc(theta mu)^m raises the type
/// to sigma = sigma0 + m theta and buys (1 + theta|mu|)^{-m} decay, so the
/// truncated cardinal series over mu_j = j pi / sigma converges fast.
///
/// Build instances with make_sampling_config; theta <= 0 selects the
/// default sigma0 / (N - m), which places the first zero of sinc(theta mu)
/// exactly at the band edge N pi / sigma.
struct SamplingConfig {
    int N = 40;          ///< truncation index (>= 8)
    int m = 6;           ///< sinc power (>= 2)
    double d = 1.0;      ///< interface point in (0, pi)
    double sigma0 = 0.0; ///< max{d, pi - d}
    double theta = 0.0;
    double sigma = 0.0;  ///< sigma0 + m * theta

    double band() const { return static_cast<double>(N) * std::numbers::pi / sigma; }
    double node(int j) const { return static_cast<double>(j) * std::numbers::pi / sigma; }
};

SamplingConfig make_sampling_config(int N, int m, double d, double theta = 0.0);
void validate(const SamplingConfig& cfg);

/// Values of the four regularized boundary functions at the sampling nodes
/// mu_j = j pi / sigma, j = 0..N. Negative-index samples are not stored:
/// every h_kl is even in mu.
struct SampleTable {
    SamplingConfig cfg;
    std::vector<double> nodes;
    std::vector<double> h11, h12, h21, h22;
    std::string problem_hash;
};

enum class Hkl { h11, h12, h21, h22 };

const std::vector<double>& h_values(const SampleTable& t, Hkl which);

/// sin(z)/z with the removable singularity filled: for |z| < 1e-4 the
/// series 1 - z^2/6 + z^4/120 is used. Bitwise even in z.
double sinc(double z);
std::complex<double> sinc(std::complex<double> z);

/// Hash of everything the sampled values depend on; used as the cache key.
std::string problem_hash(const ProblemSpec& p, const SamplingConfig& cfg,
                         const IvpConfig& ivp_cfg);

/// Solve both base problems at every node and regularize:
///   h11 = sinc(theta mu)^m (yL  - cos(mu d))
///   h12 = sinc(theta mu)^m (dyL + mu sin(mu d))
///   h21 = sinc(theta mu)^m (yR  + (pi-d) sinc(mu (pi-d)))
///   h22 = sinc(theta mu)^m (dyR - cos(mu (pi-d)))
/// Node solves are independent and run in parallel.
SampleTable build_sample_table(const ProblemSpec& p, const SamplingConfig& cfg,
                               const IvpConfig& ivp_cfg = {});

/// Truncated cardinal series sum_{j=-N}^{N} h(mu_j) sinc(sigma (mu - mu_j)),
/// folding j < 0 onto j > 0 by evenness. A mu within 1e-13 of a node
/// returns the stored sample. Throws OutOfBand for |mu| >= N pi / sigma.
double cardinal_series(const SampleTable& t, Hkl which, double mu);

/// Undo the regularization at an arbitrary in-band mu:
///   yL  = h11 sinc(theta mu)^{-m} + cos(mu d)
///   dyL = h12 sinc(theta mu)^{-m} - mu sin(mu d)
///   yR  = h21 sinc(theta mu)^{-m} - (pi-d) sinc(mu (pi-d))
///   dyR = h22 sinc(theta mu)^{-m} + cos(mu (pi-d))
/// Throws SingularRegularizer if |sinc(theta mu)| < 1e-8.
BoundaryQuad reconstruct_quad(const SampleTable& t, double mu);

/// Approximate characteristic function a yL dyR - a^{-1} dyL yR with the
/// quad from reconstruct_quad. Its zeros approximate the mu_k.
double characteristic_B_N(const SampleTable& t, double a, double mu);

/// Diagnostic upper bound on |h - h^[N]| at mu (Jagerman-type truncation
/// estimate), with the norm constant ||mu^{m-1} h||_2 approximated by a
/// Riemann sum over the stored samples.
double truncation_bound(const SampleTable& t, Hkl which, double mu);

nlohmann::json to_json(const SampleTable& t);
SampleTable table_from_json(const nlohmann::json& j);

} // namespace slrsm
