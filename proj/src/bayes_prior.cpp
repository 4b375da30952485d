#include "llc/bayes_prior.hpp"

#include <cmath>

#include "llc/contingency.hpp"
#include "llc/effect_bounds.hpp"
#include "llc/errors.hpp"
#include "llc/numerics.hpp"

namespace llc::prior {

double p_to_z(double p_value) {
  if (!(p_value > 0.0 && p_value < 1.0)) throw DomainError("P-value must lie in (0, 1)");
  return numerics::normal_quantile(1.0 - p_value);
}

double z_to_p(double z) {
  if (!std::isfinite(z)) throw DomainError("z must be finite");
  // Same quantity as 1 - Phi(z) without cancellation in the upper tail.
  return numerics::normal_cdf(-z);
}

PriorSpec flattest_prior(double or_threshold, double beta, double sigma_m) {
  if (!(or_threshold > 1.0) || !std::isfinite(or_threshold)) {
    throw DomainError("odds ratio threshold must exceed 1");
  }
  if (!(beta > 0.0 && beta < 0.5)) throw DomainError("beta must lie in (0, 0.5)");
  if (!(sigma_m > 0.0) || !std::isfinite(sigma_m)) throw DomainError("sigma_m must be positive");

  const double ratio = (std::log(or_threshold) / sigma_m) / numerics::normal_quantile(1.0 - beta);
  return {or_threshold, beta, sigma_m, ratio * ratio};
}

double sigma_m_max(double or_threshold) {
  if (!(or_threshold > 1.0) || !std::isfinite(or_threshold)) {
    throw DomainError("odds ratio threshold must exceed 1");
  }
  return std::log(or_threshold) / bounds::gamma_max(or_threshold);
}

WmPathway sigma_wm_pathway(double odds_ratio, double r_exposed) {
  if (!(odds_ratio > 0.0) || !std::isfinite(odds_ratio)) {
    throw DomainError("odds ratio must be positive");
  }
  if (!(r_exposed > 0.0 && r_exposed < 1.0)) throw DomainError("Pr(D|E) must lie in (0, 1)");

  const double r_unexposed = 1.0 / (1.0 - odds_ratio * (1.0 - 1.0 / r_exposed));
  if (!(r_unexposed > 0.0 && r_unexposed < 1.0)) {
    throw InconsistentParams("implied Pr(D|~E) lies outside (0, 1)");
  }
  const double rr = r_exposed / r_unexposed;

  const double v_m = bounds::v_min(rr, odds_ratio);
  const double sigma_vm = std::sqrt(bounds::sigma2_v(v_m, r_exposed, r_unexposed));

  const CohortParams cohort = contingency::risk_to_cohort({r_exposed, r_unexposed, v_m});
  const double w_m = bounds::w_min(cohort.p, cohort.q);
  const double sigma_wm = std::sqrt(bounds::sigma2_w(w_m, cohort.p, cohort.q));

  return {r_unexposed, rr, v_m, sigma_vm, w_m, sigma_wm, cohort.p, cohort.q};
}

}  // namespace llc::prior
