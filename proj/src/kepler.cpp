#include "llc/kepler.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "llc/errors.hpp"
#include "llc/numerics.hpp"

namespace llc::kepler {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxNewtonSteps = 50;
constexpr double kReferenceTolerance = 1e-13;

void require_eccentricity(double e) {
  if (!(e >= 0.0 && e < 1.0)) throw DomainError("eccentricity must lie in [0, 1)");
}

// sin^n(M) written as a harmonic sum and differentiated n-1 times term by term:
//   a_n(M) = sum_k (-1)^k (n-2k)^(n-1) / (2^(n-1) k! (n-k)!) * sin((n-2k) M),
// over 0 <= k < n/2. Stored per order as (frequency, weight) pairs.
struct Harmonic {
  int frequency;
  double weight;
};

using CoefficientTable = std::array<std::vector<Harmonic>, kMaxSeriesOrder + 1>;

CoefficientTable build_coefficients() {
  std::array<double, kMaxSeriesOrder + 1> factorial{};
  factorial[0] = 1.0;
  for (int i = 1; i <= kMaxSeriesOrder; ++i) factorial[i] = factorial[i - 1] * i;

  CoefficientTable table;
  for (int n = 1; n <= kMaxSeriesOrder; ++n) {
    for (int k = 0; 2 * k < n; ++k) {
      const int j = n - 2 * k;
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      const double weight =
          sign * std::pow(0.5 * j, n - 1) / (factorial[k] * factorial[n - k]);
      table[n].push_back({j, weight});
    }
  }
  return table;
}

const CoefficientTable& coefficients() {
  static const CoefficientTable table = build_coefficients();
  return table;
}

double residual_of(double e_anomaly, double eccentricity, double mean) {
  return std::abs(e_anomaly - eccentricity * std::sin(e_anomaly) - mean);
}

}  // namespace

const char* to_string(Method m) {
  switch (m) {
    case Method::newton: return "newton";
    case Method::bisection: return "bisection";
    case Method::series: return "series";
  }
  return "unknown";
}

double mean_anomaly(double eccentric_anomaly, double eccentricity) {
  require_eccentricity(eccentricity);
  return eccentric_anomaly - eccentricity * std::sin(eccentric_anomaly);
}

KeplerSolution kepler_solve(const KeplerProblem& problem, double tol) {
  const double e = problem.eccentricity;
  require_eccentricity(e);
  if (!std::isfinite(problem.mean_anomaly)) throw DomainError("mean anomaly must be finite");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");

  // E(M + 2pi k) = E(M) + 2pi k and E(-M) = -E(M).
  const double reduced = std::remainder(problem.mean_anomaly, 2.0 * kPi);
  const double offset = problem.mean_anomaly - reduced;
  const double sign = reduced < 0.0 ? -1.0 : 1.0;
  const double m = std::abs(reduced);
  auto restore = [&](double e_anomaly, double residual, Method method, int count) {
    return KeplerSolution{sign * e_anomaly + offset, residual, method, count};
  };

  if (e == 0.0) return restore(m, 0.0, Method::newton, 0);

  auto f = [&](double x) { return x - e * std::sin(x) - m; };
  auto df = [&](double x) { return 1.0 - e * std::cos(x); };

  const double lo = m - e;
  const double hi = m + e;
  double x = m + e * std::sin(m);
  if (f(x) < 0.0) x = std::min(hi, kPi);

  for (int step = 0; step <= kMaxNewtonSteps; ++step) {
    const double fx = f(x);
    if (std::abs(fx) <= tol) return restore(x, std::abs(fx), Method::newton, step);
    const double next = x - fx / df(x);
    if (!(next >= lo && next <= hi) || next == x) break;
    x = next;
  }

  const auto root = numerics::find_root(f, df, {lo, hi}, tol);
  if (root.residual > tol) {
    throw NoConvergence("kepler_solve: no convergence for M = " +
                        std::to_string(problem.mean_anomaly) + ", e = " + std::to_string(e));
  }
  return restore(root.root, root.residual, Method::bisection, root.iterations);
}

double series_coefficient(int n, double mean) {
  if (n < 1) throw DomainError("series order must be at least 1");
  if (n > kMaxSeriesOrder) {
    throw OrderTooLarge("series order " + std::to_string(n) + " exceeds the cap of " +
                        std::to_string(kMaxSeriesOrder));
  }
  double sum = 0.0;
  for (const Harmonic& h : coefficients()[n]) sum += h.weight * std::sin(h.frequency * mean);
  return sum;
}

KeplerSolution kepler_series(const KeplerProblem& problem, int order) {
  require_eccentricity(problem.eccentricity);
  if (order < 1) throw DomainError("series order must be at least 1");
  if (order > kMaxSeriesOrder) {
    throw OrderTooLarge("series order " + std::to_string(order) + " exceeds the cap of " +
                        std::to_string(kMaxSeriesOrder));
  }
  const double m = problem.mean_anomaly;
  const double e = problem.eccentricity;
  double value = m;
  double power = 1.0;
  for (int n = 1; n <= order; ++n) {
    power *= e;
    value += series_coefficient(n, m) * power;
  }
  return {value, residual_of(value, e, m), Method::series, order};
}

std::vector<DivergenceRow> divergence_table(const KeplerProblem& problem, int max_order) {
  require_eccentricity(problem.eccentricity);
  if (max_order < 1) throw DomainError("series order must be at least 1");
  if (max_order > kMaxSeriesOrder) {
    throw OrderTooLarge("series order " + std::to_string(max_order) + " exceeds the cap of " +
                        std::to_string(kMaxSeriesOrder));
  }
  const double reference = kepler_solve(problem, kReferenceTolerance).eccentric_anomaly;
  const double m = problem.mean_anomaly;
  const double e = problem.eccentricity;

  std::vector<DivergenceRow> rows;
  rows.reserve(max_order);
  double value = m;
  double power = 1.0;
  for (int n = 1; n <= max_order; ++n) {
    power *= e;
    value += series_coefficient(n, m) * power;
    rows.push_back({n, value, std::abs(value - reference)});
  }
  return rows;
}

double series_radius() {
  // d/dx [x / cosh x] = (1 - x tanh x) / cosh x, so the maximum sits at the
  // root of x tanh x - 1, bracketed by [1, 1.5].
  auto f = [](double x) { return x * std::tanh(x) - 1.0; };
  auto df = [](double x) {
    const double c = std::cosh(x);
    return std::tanh(x) + x / (c * c);
  };
  const double z = numerics::find_root(f, df, {1.0, 1.5}, 1e-14).root;
  return z / std::cosh(z);
}

}  // namespace llc::kepler
