#pragma once

#include <vector>

namespace llc::kepler {

struct KeplerProblem {
  double mean_anomaly;  // M, radians
  double eccentricity;  // 0 <= e < 1
};

enum class Method { newton, bisection, series };

const char* to_string(Method m);

struct KeplerSolution {
  double eccentric_anomaly;
  double residual;  // |E - e sin E - M|
  Method method;
  int iterations_or_order;
};

struct DivergenceRow {
  int order;
  double value;
  double abs_error;
};

// Highest series order kepler_series accepts.
inline constexpr int kMaxSeriesOrder = 64;

// E - e sin(E). Throws DomainError unless 0 <= e < 1.
double mean_anomaly(double eccentric_anomaly, double eccentricity);

/// Solves M = E - e sin(E) for E to |residual| <= tol.
///
/// M is reduced modulo 2pi and reflected into [0, pi]. There f is convex in E,
/// so Newton started on the right of the root decreases monotonically into it:
/// the classical starter M + e sin(M) is used when it already lies right of
/// the root, otherwise min(M + e, pi). A safeguarded bisection on
/// [M - e, M + e] takes over if Newton leaves that bracket or stalls; the
/// solution records which method finished.
KeplerSolution kepler_solve(const KeplerProblem& problem, double tol = 1e-12);

/// Truncated power series in e,  E = M + sum_{n=1..order} a_n(M) e^n, with
/// a_n(M) = 1/n! d^{n-1}/dM^{n-1} sin^n(M). Converges only for e below the
/// Laplace limit; the residual is reported, not bounded.
/// Throws OrderTooLarge above kMaxSeriesOrder, DomainError for order < 1.
KeplerSolution kepler_series(const KeplerProblem& problem, int order);

// a_n(M) for 1 <= n <= kMaxSeriesOrder.
double series_coefficient(int n, double mean_anomaly);

// Series value and absolute error against the Newton solution for orders
// 1..max_order.
std::vector<DivergenceRow> divergence_table(const KeplerProblem& problem, int max_order);

/// Maximum of x / cosh(x), located through its stationarity condition
/// x tanh(x) = 1. This is the convergence radius of the series in e.
double series_radius();

}  // namespace llc::kepler
