#include "llc/effect_bounds.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "llc/errors.hpp"
#include "llc/numerics.hpp"

namespace llc::bounds {
namespace {

constexpr double kRootTolerance = 1e-14;
constexpr double kHyperbolicSwitch = 300.0;
constexpr double kViolationSlack = 1e-12;
constexpr double kJitterSd = 0.02;
constexpr std::uint64_t kBlockSize = 4096;

bool open_unit(double x) { return x > 0.0 && x < 1.0; }

void require_unit(double x, const char* what) {
  if (!open_unit(x)) throw DomainError(std::string(what) + " must lie in (0, 1)");
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(std::string(what) + " must be positive");
}

struct BlockResult {
  double max_abs_gamma = -1.0;
  RiskParams arg_max{};
  std::uint64_t violations = 0;
};

BlockResult run_block(std::uint64_t block, std::uint64_t begin, std::uint64_t end,
                      std::uint64_t seed, const BoundConstants& k) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
  std::mt19937_64 gen(seq);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::normal_distribution<double> jitter(0.0, kJitterSd);

  auto open_uniform = [&] {
    double u = uniform(gen);
    while (!open_unit(u)) u = uniform(gen);
    return u;
  };
  // Truncated rather than clamped: a clamped draw can land on a denormal and overflow the odds.
  auto near = [&](double centre) {
    double x = centre + jitter(gen);
    while (!open_unit(x)) x = centre + jitter(gen);
    return x;
  };

  BlockResult out;
  for (std::uint64_t i = begin; i < end; ++i) {
    RiskParams r{};
    if (i % 2 == 0) {
      r.r_exposed = open_uniform();
      r.r_unexposed = open_uniform();
      r.v = open_uniform();
    } else {
      r.r_exposed = near(k.p_star);
      r.r_unexposed = near(1.0 - k.p_star);
      r.v = near(0.5);
    }
    const double g = std::abs(gamma(r));
    const double g_max = std::abs(gamma_max(contingency::or_rr_from_risk(r).odds_ratio));
    if (g > g_max + kViolationSlack || g > k.llc + kViolationSlack) ++out.violations;
    if (g > out.max_abs_gamma) {
      out.max_abs_gamma = g;
      out.arg_max = r;
    }
  }
  return out;
}

BoundConstants compute_constants() {
  auto f = [](double z) { return z * std::tanh(z) - 1.0; };
  auto df = [](double z) {
    const double c = std::cosh(z);
    return std::tanh(z) + z / (c * c);
  };
  const double z = numerics::find_root(f, df, {1.0, 1.5}, kRootTolerance).root;
  const double x_star = 4.0 * z;
  return {z, x_star, std::exp(x_star), kappa(x_star), 1.0 / (2.0 * z) + 0.5};
}

}  // namespace

double sigma2_w(double w, double p, double q) {
  require_unit(w, "w");
  require_unit(p, "p");
  require_unit(q, "q");
  return 1.0 / (w * p * (1.0 - p)) + 1.0 / ((1.0 - w) * q * (1.0 - q));
}

double w_min(double p, double q) {
  require_unit(p, "p");
  require_unit(q, "q");
  const double odds_ratio = p * (1.0 - q) / (q * (1.0 - p));
  return 1.0 / (1.0 + (p / q) * std::sqrt(1.0 / odds_ratio));
}

double v_min(double rr, double odds_ratio) {
  require_positive(rr, "relative risk");
  require_positive(odds_ratio, "odds ratio");
  return 1.0 / (1.0 + rr * std::sqrt(1.0 / odds_ratio));
}

double sigma2_v(double v, double r_exposed, double r_unexposed) {
  require_unit(v, "v");
  require_unit(r_exposed, "Pr(D|E)");
  require_unit(r_unexposed, "Pr(D|~E)");
  return 1.0 / (v * r_exposed * (1.0 - r_exposed)) +
         1.0 / ((1.0 - v) * r_unexposed * (1.0 - r_unexposed));
}

RiskParams optimal_risk(double odds_ratio) {
  require_positive(odds_ratio, "odds ratio");
  const double r_unexposed = 1.0 / (1.0 + std::sqrt(odds_ratio));
  return {1.0 - r_unexposed, r_unexposed, 0.5};
}

double gamma(const RiskParams& r) {
  const double odds_ratio = contingency::or_rr_from_risk(r).odds_ratio;
  return std::log(odds_ratio) / std::sqrt(sigma2_v(r.v, r.r_exposed, r.r_unexposed));
}

EffectSummary effect_summary(const RiskParams& r) {
  const auto [odds_ratio, rr] = contingency::or_rr_from_risk(r);
  const double mu = std::log(odds_ratio);
  const double sigma = std::sqrt(sigma2_v(r.v, r.r_exposed, r.r_unexposed));
  return {odds_ratio, rr, mu, sigma, mu / sigma};
}

double gamma_max(double odds_ratio) {
  require_positive(odds_ratio, "odds ratio");
  const double x = std::log(odds_ratio);
  if (std::abs(x) > kHyperbolicSwitch) return kappa(x);
  return x / (2.0 * std::sqrt(2.0 + (1.0 + odds_ratio) / std::sqrt(odds_ratio)));
}

double kappa(double x) {
  const double u = x / 4.0;
  return u / std::cosh(u);
}

double kappa_prime(double x) {
  const double u = x / 4.0;
  return (4.0 - x * std::tanh(u)) / (16.0 * std::cosh(u));
}

const BoundConstants& bound_constants() {
  static const BoundConstants constants = compute_constants();
  return constants;
}

VerificationReport verify_bound(std::uint64_t n_samples, std::uint64_t seed, unsigned workers) {
  if (n_samples == 0) throw DomainError("verify_bound: need at least one sample");
  const BoundConstants& k = bound_constants();

  const std::uint64_t n_blocks = (n_samples + kBlockSize - 1) / kBlockSize;
  std::vector<BlockResult> blocks(n_blocks);
  auto work = [&](std::uint64_t b) {
    const std::uint64_t begin = b * kBlockSize;
    blocks[b] = run_block(b, begin, std::min(begin + kBlockSize, n_samples), seed, k);
  };

  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n_blocks)));
  if (workers == 1) {
    for (std::uint64_t b = 0; b < n_blocks; ++b) work(b);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t b = next++; b < n_blocks; b = next++) work(b);
      });
    }
  }

  VerificationReport report;
  report.samples = n_samples;
  report.bound = k.llc;
  report.max_gamma_observed = -1.0;
  for (const BlockResult& b : blocks) {
    report.violations += b.violations;
    if (b.max_abs_gamma > report.max_gamma_observed) {
      report.max_gamma_observed = b.max_abs_gamma;
      report.arg_max = b.arg_max;
    }
  }
  return report;
}

}  // namespace llc::bounds
