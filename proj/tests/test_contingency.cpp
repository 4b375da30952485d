#include <cmath>

#include "doctest.h"
#include "llc/contingency.hpp"
#include "llc/effect_bounds.hpp"
#include "llc/errors.hpp"
#include "oracles.hpp"

using namespace llc;
using namespace llc::contingency;

TEST_CASE("estimate_probs") {
  SUBCASE("(20,10,10,20)") {
    const auto e = estimate_probs({20, 10, 10, 20});
    CHECK(e.p_hat == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(e.q_hat == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(e.w_hat == 0.5);
    CHECK(e.n == 60);
  }
  SUBCASE("uniform table") {
    const auto e = estimate_probs({1, 1, 1, 1});
    CHECK(e.p_hat == 0.5);
    CHECK(e.q_hat == 0.5);
    CHECK(e.w_hat == 0.5);
    CHECK(e.n == 4);
  }
  SUBCASE("(9,1,1,9)") {
    const auto e = estimate_probs({9, 1, 1, 9});
    CHECK(e.p_hat == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(e.q_hat == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(e.w_hat == 0.5);
    CHECK(e.n == 20);
  }
  SUBCASE("empty margins") {
    CHECK_THROWS_AS(estimate_probs({0, 0, 3, 4}), ZeroMargin);
    CHECK_THROWS_AS(estimate_probs({3, 4, 0, 0}), ZeroMargin);
  }
}

TEST_CASE("estimate_or") {
  const auto a = estimate_or({20, 10, 10, 20});
  CHECK(a.odds_ratio == 4.0);
  CHECK(std::abs(a.log_odds_ratio - 1.386294361119891) < 1e-15);

  const auto b = estimate_or({5, 5, 5, 5});
  CHECK(b.odds_ratio == 1.0);
  CHECK(b.log_odds_ratio == 0.0);

  // (10.5 * 5.5) / (0.5 * 5.5) = 21
  const auto c = estimate_or({10, 0, 5, 5}, true);
  CHECK(c.odds_ratio == doctest::Approx(21.0).epsilon(1e-15));
  CHECK(std::abs(c.log_odds_ratio - 3.044522437723423) < 1e-14);

  CHECK_THROWS_AS(estimate_or({10, 0, 5, 5}), ZeroCell);
  CHECK_THROWS_AS(estimate_or({0, 0, 5, 5}, true), ZeroMargin);
}

TEST_CASE("t_statistic") {
  CHECK(std::abs(t_statistic({20, 10, 10, 20}) - 2.531015643091923) < 1e-12);
  CHECK(t_statistic({5, 5, 5, 5}) == 0.0);
  // ln(81) / sqrt(1/9 + 1 + 1 + 1/9)
  const double hand = std::log(81.0) / std::sqrt(1.0 / 9 + 1.0 + 1.0 + 1.0 / 9);
  CHECK(std::abs(t_statistic({9, 1, 1, 9}) - hand) < 1e-14);
  CHECK(std::abs(hand - 2.948) < 1e-3);
  CHECK_THROWS_AS(t_statistic({9, 0, 1, 9}), ZeroCell);
  CHECK(std::isfinite(t_statistic({9, 0, 1, 9}, true)));
}

TEST_CASE("t_statistic equals the factored sqrt(N) mu / sigma(w) form") {
  // (20,10,10,20): sum 1/n = 0.3 path versus sqrt(60) ln 4 / sqrt(18).
  CHECK(std::abs(std::sqrt(60.0) * std::log(4.0) / std::sqrt(18.0) -
                 t_statistic({20, 10, 10, 20})) < 1e-12);

  oracle::Sampler s(8);
  for (int i = 0; i < 10000; ++i) {
    const TwoByTwoTable t{s.integer(1, 50), s.integer(1, 50), s.integer(1, 50), s.integer(1, 50)};
    const auto e = estimate_probs(t);
    const double mu = estimate_or(t).log_odds_ratio;
    const double factored =
        std::sqrt(static_cast<double>(e.n)) * mu / std::sqrt(bounds::sigma2_w(e.w_hat, e.p_hat, e.q_hat));
    const double direct = t_statistic(t);
    if (mu == 0.0) {
      REQUIRE(direct == 0.0);
    } else {
      REQUIRE(oracle::rel_diff(direct, factored) < 1e-12);
    }
  }
}

TEST_CASE("estimate_or cross-product equals the odds form") {
  oracle::Sampler s(9);
  for (int i = 0; i < 10000; ++i) {
    const TwoByTwoTable t{s.integer(1, 500), s.integer(1, 500), s.integer(1, 500), s.integer(1, 500)};
    const auto e = estimate_probs(t);
    const double odds_form = (e.p_hat / (1.0 - e.p_hat)) / (e.q_hat / (1.0 - e.q_hat));
    REQUIRE(oracle::rel_diff(estimate_or(t).odds_ratio, odds_form) < 1e-12);
  }
}

TEST_CASE("cohort_to_risk") {
  const auto a = cohort_to_risk({2.0 / 3.0, 1.0 / 3.0, 0.5});
  CHECK(a.r_exposed == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(a.r_unexposed == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(a.v == doctest::Approx(0.5).epsilon(1e-15));

  const auto b = cohort_to_risk({0.3, 0.3, 0.1});
  CHECK(std::abs(b.r_exposed - 0.1) < 1e-15);
  CHECK(std::abs(b.r_unexposed - 0.1) < 1e-15);
  CHECK(std::abs(b.v - 0.3) < 1e-15);

  const auto c = cohort_to_risk({0.9, 0.1, 0.5});
  CHECK(std::abs(c.v - 0.5) < 1e-15);
  CHECK(std::abs(c.r_exposed - 0.9) < 1e-15);
  CHECK(std::abs(c.r_unexposed - 0.1) < 1e-15);

  CHECK_THROWS_AS(cohort_to_risk({0.0, 0.5, 0.5}), DomainError);
  CHECK_THROWS_AS(cohort_to_risk({0.5, 1.0, 0.5}), DomainError);
  CHECK_THROWS_AS(cohort_to_risk({0.5, 0.5, 1.0}), DomainError);
}

TEST_CASE("risk_to_cohort") {
  const auto a = risk_to_cohort({2.0 / 3.0, 1.0 / 3.0, 0.5});
  CHECK(std::abs(a.p - 2.0 / 3.0) < 1e-15);
  CHECK(std::abs(a.q - 1.0 / 3.0) < 1e-15);
  CHECK(std::abs(a.w - 0.5) < 1e-15);

  const auto b = risk_to_cohort({0.1, 0.1, 0.3});
  CHECK(std::abs(b.p - 0.3) < 1e-15);
  CHECK(std::abs(b.q - 0.3) < 1e-15);
  CHECK(std::abs(b.w - 0.1) < 1e-15);

  CHECK_THROWS_AS(risk_to_cohort({0.5, 0.5, 0.0}), DomainError);
}

TEST_CASE("round trip risk -> cohort -> risk") {
  oracle::Sampler s(11);
  for (int i = 0; i < 10000; ++i) {
    const RiskParams r{s.open(), s.open(), s.open()};
    const RiskParams back = cohort_to_risk(risk_to_cohort(r));
    REQUIRE(std::abs(back.r_exposed - r.r_exposed) < 1e-12);
    REQUIRE(std::abs(back.r_unexposed - r.r_unexposed) < 1e-12);
    REQUIRE(std::abs(back.v - r.v) < 1e-12);
  }
}

TEST_CASE("or_rr_from_risk") {
  const auto a = or_rr_from_risk({0.5, 0.2, 0.4});
  CHECK(a.odds_ratio == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(a.relative_risk == doctest::Approx(2.5).epsilon(1e-15));

  const auto b = or_rr_from_risk({0.3, 0.3, 0.9});
  CHECK(b.odds_ratio == 1.0);
  CHECK(b.relative_risk == 1.0);

  const auto c = or_rr_from_risk({0.916778, 0.083222, 0.5});
  CHECK(std::abs(c.odds_ratio - 121.354) < 1e-2);
  CHECK(std::abs(c.relative_risk - 11.016) < 1e-3);
}

TEST_CASE("odds ratio is the same in both parameterizations") {
  oracle::Sampler s(12);
  for (int i = 0; i < 10000; ++i) {
    const CohortParams c{s.open(), s.open(), s.open()};
    const double from_cohort = c.p * (1.0 - c.q) / (c.q * (1.0 - c.p));
    const auto r = cohort_to_risk(c);
    const double from_risk = or_rr_from_risk(r).odds_ratio;
    // Forming 1 - r amplifies rounding in r by 1 / (1 - r).
    const double cond = 1.0 / (1.0 - r.r_exposed) + 1.0 / (1.0 - r.r_unexposed);
    REQUIRE(oracle::rel_diff(from_cohort, from_risk) < 1e-13 * cond);
  }
}
