#pragma once

namespace llc::prior {

// Zero-mean normal prior on the standardized effect mu/sigma, pinned by the
// tail constraint Pr(OR > or_threshold) = beta.
struct PriorSpec {
  double or_threshold;
  double beta;
  double sigma_m;
  double sigma0;  // prior variance
};

struct WmPathway {
  double r_unexposed;  // Pr(D|~E) implied by the odds ratio and Pr(D|E)
  double rr;
  double v_m;          // variance-minimizing pooled exposure
  double sigma_vm;
  double w_m;          // variance-minimizing case fraction for the implied (p, q)
  double sigma_wm;
  double p;            // Pr(E|D)
  double q;            // Pr(E|~D)
};

// One-sided P-value to normal deviate: Phi^-1(1 - P).
double p_to_z(double p_value);

// Upper-tail probability 1 - Phi(z).
double z_to_p(double z);

/// Largest prior variance for mu/sigma consistent with Pr(OR > x) = beta when
/// sigma = sigma_m:  sigma0 = ((ln x / sigma_m) / Phi^-1(1 - beta))^2.
/// Requires x > 1, 0 < beta < 0.5, sigma_m > 0.
PriorSpec flattest_prior(double or_threshold, double beta, double sigma_m);

// ln(x) / gamma_max(x): the sigma_m that makes the flattest prior widest.
double sigma_m_max(double or_threshold);

/// Design scale sigma(w_m) when only the odds ratio and Pr(D|E) are assumed.
///
/// Pr(D|~E) = 1 / (1 - OR (1 - 1/Pr(D|E))) and RR follow directly. The pooled
/// exposure is placed at its minimizer v_m = 1/(1 + RR/sqrt(OR)); the joint
/// distribution that fixes gives (p, q), from which w_m and sigma(w_m) are
/// evaluated. Throws InconsistentParams if Pr(D|~E) falls outside (0, 1).
WmPathway sigma_wm_pathway(double odds_ratio, double r_exposed);

}  // namespace llc::prior
