#include "llc/contingency.hpp"

#include <array>
#include <cmath>
#include <string>

#include "llc/errors.hpp"

namespace llc::contingency {
namespace {

bool open_unit(double x) { return x > 0.0 && x < 1.0; }

std::array<double, 4> cells(const TwoByTwoTable& t, bool correction) {
  validate(t);
  if (!correction && (t.n11 == 0 || t.n12 == 0 || t.n21 == 0 || t.n22 == 0)) {
    throw ZeroCell("table has a zero cell; enable the 0.5 correction to estimate the odds ratio");
  }
  const double add = correction ? 0.5 : 0.0;
  return {static_cast<double>(t.n11) + add, static_cast<double>(t.n12) + add,
          static_cast<double>(t.n21) + add, static_cast<double>(t.n22) + add};
}

}  // namespace

void validate(const TwoByTwoTable& t) {
  if (t.cases() == 0) throw ZeroMargin("table has no cases (n11 + n12 = 0)");
  if (t.controls() == 0) throw ZeroMargin("table has no controls (n21 + n22 = 0)");
}

void validate(const CohortParams& c) {
  if (!open_unit(c.p) || !open_unit(c.q) || !open_unit(c.w)) {
    throw DomainError("cohort parameters p, q, w must each lie in (0, 1)");
  }
}

void validate(const RiskParams& r) {
  if (!open_unit(r.r_exposed) || !open_unit(r.r_unexposed) || !open_unit(r.v)) {
    throw DomainError("risk parameters Pr(D|E), Pr(D|~E), v must each lie in (0, 1)");
  }
}

SampleProportions estimate_probs(const TwoByTwoTable& t) {
  validate(t);
  const auto cases = static_cast<double>(t.cases());
  const auto controls = static_cast<double>(t.controls());
  return {static_cast<double>(t.n11) / cases, static_cast<double>(t.n21) / controls,
          cases / static_cast<double>(t.total()), t.total()};
}

OddsEstimate estimate_or(const TwoByTwoTable& t, bool correction) {
  const auto [a, b, c, d] = cells(t, correction);
  const double odds_ratio = (a * d) / (b * c);
  return {odds_ratio, std::log(odds_ratio)};
}

double t_statistic(const TwoByTwoTable& t, bool correction) {
  const auto [a, b, c, d] = cells(t, correction);
  const double mu = std::log((a * d) / (b * c));
  return mu / std::sqrt(1.0 / a + 1.0 / b + 1.0 / c + 1.0 / d);
}

RiskParams cohort_to_risk(const CohortParams& c) {
  validate(c);
  const double v = c.w * c.p + (1.0 - c.w) * c.q;
  // 1 - v expanded so it keeps full precision when v is close to 1.
  const double not_v = c.w * (1.0 - c.p) + (1.0 - c.w) * (1.0 - c.q);
  return {c.w * c.p / v, c.w * (1.0 - c.p) / not_v, v};
}

CohortParams risk_to_cohort(const RiskParams& r) {
  validate(r);
  const double w = r.v * r.r_exposed + (1.0 - r.v) * r.r_unexposed;
  const double not_w = r.v * (1.0 - r.r_exposed) + (1.0 - r.v) * (1.0 - r.r_unexposed);
  return {r.v * r.r_exposed / w, r.v * (1.0 - r.r_exposed) / not_w, w};
}

OddsAndRisk or_rr_from_risk(const RiskParams& r) {
  validate(r);
  const double odds_exposed = r.r_exposed / (1.0 - r.r_exposed);
  const double odds_unexposed = r.r_unexposed / (1.0 - r.r_unexposed);
  return {odds_exposed / odds_unexposed, r.r_exposed / r.r_unexposed};
}

}  // namespace llc::contingency
