#include "llc/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "llc/errors.hpp"

namespace llc::numerics {
namespace {

constexpr int kMaxIterations = 10000;

double evaluate(const Function& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    throw NonFinite("find_root: function is not finite at x = " + std::to_string(x));
  }
  return y;
}

bool collapsed(double a, double b, double tol) {
  return b - a <= tol || std::nextafter(a, b) >= b;
}

}  // namespace

RootResult find_root(const Function& f, const Function& df, Bracket bracket, double tol) {
  if (!(tol > 0.0)) throw DomainError("find_root: tolerance must be positive");
  if (!std::isfinite(bracket.lo) || !std::isfinite(bracket.hi) || !(bracket.lo < bracket.hi)) {
    throw DomainError("find_root: bracket must satisfy lo < hi");
  }

  double a = bracket.lo;
  double b = bracket.hi;
  double fa = evaluate(f, a);
  double fb = evaluate(f, b);
  if (fa == 0.0) return {a, 0.0, 0};
  if (fb == 0.0) return {b, 0.0, 0};
  if ((fa > 0.0) == (fb > 0.0)) {
    throw NoSignChange("find_root: f(lo) and f(hi) have the same sign");
  }

  // Width two iterations back; if the bracket has not halved since, bisect.
  double width_prev = b - a;
  double width_prev2 = 2.0 * width_prev;
  double x = a + 0.5 * (b - a);

  for (int it = 1; it <= kMaxIterations; ++it) {
    const double fx = evaluate(f, x);
    if (std::abs(fx) <= tol) return {x, std::abs(fx), it};

    if ((fx > 0.0) == (fa > 0.0)) {
      a = x;
      fa = fx;
    } else {
      b = x;
      fb = fx;
    }

    if (collapsed(a, b, tol)) {
      return std::abs(fa) <= std::abs(fb) ? RootResult{a, std::abs(fa), it}
                                          : RootResult{b, std::abs(fb), it};
    }

    const double width = b - a;
    double next = a + 0.5 * width;
    if (width <= 0.5 * width_prev2) {
      const double slope = df(x);
      if (std::isfinite(slope) && slope != 0.0) {
        const double candidate = x - fx / slope;
        if (candidate > a && candidate < b) next = candidate;
      }
    }
    width_prev2 = width_prev;
    width_prev = width;
    x = next;
  }
  throw NoConvergence("find_root: iteration limit reached");
}

RootResult find_root(const Function& f, Bracket bracket, double tol) {
  auto central = [&f](double x) {
    const double h = 1e-6 * std::max(1.0, std::abs(x));
    return (f(x + h) - f(x - h)) / (2.0 * h);
  };
  return find_root(f, central, bracket, tol);
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

// Rational approximation (Acklam, relative error ~1.15e-9) followed by one
// Newton step on the CDF. Computed on the lower half and reflected so the
// upper tail does not lose precision to 1 - p rounding.
namespace {

double lower_quantile(double p) {
  static constexpr std::array<double, 6> a = {-3.969683028665376e+01, 2.209460984245205e+02,
                                              -2.759285104469687e+02, 1.383577518672690e+02,
                                              -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b = {-5.447609879822406e+01, 1.615858368580409e+02,
                                              -1.556989798598866e+02, 6.680131188771972e+01,
                                              -1.328068155288572e+01};
  static constexpr std::array<double, 6> c = {-7.784894002430293e-03, -3.223964580411365e-01,
                                              -2.400758277161838e+00, -2.549732539343734e+00,
                                              4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d = {7.784695709041462e-03, 3.224671290700398e-01,
                                              2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double kLowBreak = 0.02425;

  double x;
  if (p < kLowBreak) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }

  const double density = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
  if (density > 0.0) x -= (normal_cdf(x) - p) / density;
  return x;
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("normal_quantile: probability must lie in (0, 1)");
  }
  if (p == 0.5) return 0.0;
  return p < 0.5 ? lower_quantile(p) : -lower_quantile(1.0 - p);
}

}  // namespace llc::numerics
