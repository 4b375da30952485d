#pragma once

#include <cstdint>

namespace llc {

// Case-control table, rows = disease status, columns = exposure:
//
//            E     not E
//   D       n11    n12
//   not D   n21    n22
struct TwoByTwoTable {
  std::uint64_t n11 = 0;
  std::uint64_t n12 = 0;
  std::uint64_t n21 = 0;
  std::uint64_t n22 = 0;

  std::uint64_t cases() const { return n11 + n12; }
  std::uint64_t controls() const { return n21 + n22; }
  std::uint64_t total() const { return n11 + n12 + n21 + n22; }
};

// Exposure probabilities among cases (p) and controls (q), plus prevalence w.
struct CohortParams {
  double p;
  double q;
  double w;
};

// Disease risk among exposed (r_exposed) and unexposed (r_unexposed), plus
// the pooled exposure probability v.
struct RiskParams {
  double r_exposed;
  double r_unexposed;
  double v;
};

struct EffectSummary {
  double odds_ratio;
  double relative_risk;
  double mu;     // ln(odds_ratio)
  double sigma;  // design-dependent scale, sqrt of the variance factor
  double gamma;  // mu / sigma
};

struct SampleProportions {
  double p_hat;
  double q_hat;
  double w_hat;
  std::uint64_t n;
};

struct OddsEstimate {
  double odds_ratio;
  double log_odds_ratio;
};

struct OddsAndRisk {
  double odds_ratio;
  double relative_risk;
};

namespace contingency {

// Throws ZeroMargin if the table has no cases or no controls.
void validate(const TwoByTwoTable& t);

// Throws DomainError unless every component lies in the open interval (0, 1).
void validate(const CohortParams& c);
void validate(const RiskParams& r);

SampleProportions estimate_probs(const TwoByTwoTable& t);

/// Cross-product odds ratio n11*n22 / (n12*n21) and its logarithm.
/// With `correction` set, 0.5 is added to every cell first (Haldane-Anscombe);
/// otherwise any zero cell raises ZeroCell.
OddsEstimate estimate_or(const TwoByTwoTable& t, bool correction = false);

/// ln(OR) / sqrt(sum 1/n_ij), asymptotically standard normal under no effect.
double t_statistic(const TwoByTwoTable& t, bool correction = false);

RiskParams cohort_to_risk(const CohortParams& c);
CohortParams risk_to_cohort(const RiskParams& r);

OddsAndRisk or_rr_from_risk(const RiskParams& r);

}  // namespace contingency
}  // namespace llc
