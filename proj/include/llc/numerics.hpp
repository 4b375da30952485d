#pragma once

#include <functional>

namespace llc::numerics {

// Closed search interval; the target must change sign across it.
struct Bracket {
  double lo;
  double hi;
};

struct RootResult {
  double root;
  double residual;  // |f(root)|
  int iterations;
};

using Function = std::function<double(double)>;

/// Safeguarded Newton/bisection root finder.
///
/// Newton steps are taken while they stay strictly inside the current bracket
/// and shrink it at least as fast as bisection would; otherwise the bracket is
/// halved. Stops when |f(x)| <= tol or the bracket is no wider than tol (or has
/// collapsed to adjacent doubles). The returned root always lies in the
/// initial bracket.
///
/// Throws DomainError for a malformed bracket or tol <= 0, NoSignChange when
/// f(lo) and f(hi) share a sign, NonFinite when f or f' is not finite.
RootResult find_root(const Function& f, const Function& df, Bracket bracket, double tol);

/// As above, with the derivative taken by central difference using step
/// 1e-6 * max(1, |x|).
RootResult find_root(const Function& f, Bracket bracket, double tol);

/// Standard normal CDF, evaluated through erfc so both tails keep full
/// relative precision.
double normal_cdf(double x);

/// Standard normal quantile. Throws DomainError unless 0 < p < 1.
double normal_quantile(double p);

}  // namespace llc::numerics
