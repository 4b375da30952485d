#pragma once

#include <cstdint>

#include "llc/contingency.hpp"

namespace llc::bounds {

// Constants fixed by the root of z * tanh(z) = 1.
struct BoundConstants {
  double z;       // root of z * tanh(z) = 1
  double x_star;  // 4z, the log odds ratio maximizing the standardized effect
  double or_star; // exp(x_star)
  double llc;     // kappa(x_star), the Laplace limit constant
  double p_star;  // Pr(D|E) at the attainment point, 1/(2z) + 1/2
};

struct VerificationReport {
  std::uint64_t samples = 0;
  double max_gamma_observed = 0.0;  // largest |gamma| seen
  RiskParams arg_max{};
  std::uint64_t violations = 0;
  double bound = 0.0;
};

// Variance factor of the log odds ratio as a function of the case fraction w:
// 1/(w p(1-p)) + 1/((1-w) q(1-q)).
double sigma2_w(double w, double p, double q);

// Case fraction minimizing sigma2_w for fixed exposure probabilities.
double w_min(double p, double q);

// Pooled exposure minimizing sigma2_v. Positivity is the only check; whether
// (rr, odds_ratio) is achievable by valid risks is up to the caller.
double v_min(double rr, double odds_ratio);

// Variance factor in the risk parameterization:
// 1/(v r1(1-r1)) + 1/((1-v) r0(1-r0)).
double sigma2_v(double v, double r_exposed, double r_unexposed);

/// Risks and pooled exposure that minimize the variance factor for a fixed
/// odds ratio: Pr(D|E) = 1 - 1/(1+sqrt(OR)), Pr(D|~E) = 1 - Pr(D|E), v = 1/2.
RiskParams optimal_risk(double odds_ratio);

// Standardized effect ln(OR)/sigma(v) for a risk specification.
double gamma(const RiskParams& r);

EffectSummary effect_summary(const RiskParams& r);

/// Largest standardized effect reachable at a given odds ratio,
/// ln(OR) / (2 sqrt(2 + (1+OR)/sqrt(OR))). Switches to the hyperbolic form
/// kappa(ln OR) when |ln OR| > 300, where (1+OR)/sqrt(OR) would overflow.
double gamma_max(double odds_ratio);

// (x/4) sech(x/4): gamma_max in terms of x = ln(OR).
double kappa(double x);

// (4 - x tanh(x/4)) / (16 cosh(x/4)).
double kappa_prime(double x);

// Computed once; later calls return the cached value.
const BoundConstants& bound_constants();

/// Empirical check of |gamma| <= |gamma_max(OR)| <= LLC.
///
/// Even-indexed samples are uniform over (0,1)^3; odd-indexed ones are
/// Gaussian jitter (s.d. 0.02, clipped into (0,1)) around the attainment
/// point (p_star, 1 - p_star, 1/2). Samples are drawn in fixed blocks, each
/// with its own seeded stream, so the report depends only on
/// (n_samples, seed) and not on `workers`.
VerificationReport verify_bound(std::uint64_t n_samples, std::uint64_t seed, unsigned workers = 1);

}  // namespace llc::bounds
