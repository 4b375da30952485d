#include "llc/cli.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"
#include "llc/bayes_prior.hpp"
#include "llc/contingency.hpp"
#include "llc/effect_bounds.hpp"
#include "llc/errors.hpp"
#include "llc/kepler.hpp"
#include "llc/numerics.hpp"

namespace llc::cli {
namespace {

using nlohmann::json;

// Malformed input that parsed as far as CLI11 is concerned (exit 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Envelope {
  std::string command;
  json inputs = json::object();
  json results = json::object();
  std::optional<std::string> error;
};

std::string format_number(double x) {
  std::array<char, 64> buf{};
  const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), r.ptr);
}

void flatten(const json& j, const std::string& key, std::vector<std::string>& lines) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, key + "." + k, lines);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], key + "." + std::to_string(i), lines);
  } else if (j.is_number_float()) {
    lines.push_back(key + "=" + format_number(j.get<double>()));
  } else if (j.is_string()) {
    lines.push_back(key + "=" + j.get<std::string>());
  } else {
    lines.push_back(key + "=" + j.dump());
  }
}

std::string render(const Envelope& env, bool text) {
  const char* status = env.error ? "error" : "ok";
  const json results = env.error ? json::object() : env.results;
  if (!text) {
    json doc = {{"command", env.command}, {"inputs", env.inputs}, {"results", results},
                {"status", status}};
    if (env.error) doc["error_message"] = *env.error;
    return doc.dump() + "\n";
  }
  std::vector<std::string> lines;
  lines.push_back("command=" + env.command);
  if (env.error) lines.push_back("error_message=" + *env.error);
  flatten(env.inputs, "inputs", lines);
  flatten(results, "results", lines);
  lines.push_back(std::string("status=") + status);
  std::string out;
  for (const auto& line : lines) out += line + "\n";
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

TwoByTwoTable parse_counts(std::string_view text) {
  std::array<std::uint64_t, 4> n{};
  std::size_t field = 0;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string_view token =
        trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                 : comma - start));
    if (field >= n.size()) throw UsageError("expected exactly four counts n11,n12,n21,n22");
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), n[field]);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
      throw UsageError("count '" + std::string(token) + "' is not a non-negative integer");
    }
    ++field;
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (field != n.size()) throw UsageError("expected exactly four counts n11,n12,n21,n22");
  return {n[0], n[1], n[2], n[3]};
}

std::string read_counts_line(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open counts file '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    if (!trim(line).empty()) return line;
  }
  throw UsageError("counts file '" + path + "' is empty");
}

json risk_json(const RiskParams& r) {
  return {{"r_exposed", r.r_exposed}, {"r_unexposed", r.r_unexposed}, {"v", r.v}};
}

// Options shared by every subcommand.
struct Globals {
  std::string format = "json";
  double tol = 1e-12;
};

CLI::App* add_sub(CLI::App& parent, const std::string& name, const std::string& description) {
  CLI::App* sub = parent.add_subcommand(name, description);
  sub->fallthrough();
  return sub;
}

// Registers every subcommand on `app`; the one CLI11 selects fills the
// envelope through `action`.
void build(CLI::App& app, Globals& g, Envelope& env, std::function<void()>& action) {
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--tol", g.tol, "Solver tolerance")->capture_default_str();
  app.require_subcommand(1);

  // table
  {
    auto* sub = add_sub(app, "table", "Estimators and T statistic for a 2x2 case-control table");
    auto counts = std::make_shared<std::string>();
    auto file = std::make_shared<std::string>();
    auto correction = std::make_shared<bool>(false);
    auto* counts_opt = sub->add_option("--counts", *counts, "n11,n12,n21,n22");
    auto* file_opt = sub->add_option("--file", *file, "File whose first line holds the counts");
    counts_opt->excludes(file_opt);
    sub->add_flag("--correction", *correction, "Add 0.5 to every cell");
    sub->callback([=, &env, &action] {
      action = [=, &env] {
        env.command = "table";
        if (counts_opt->count() == 0 && file_opt->count() == 0) {
          throw UsageError("table needs --counts or --file");
        }
        std::string line;
        if (counts_opt->count() > 0) {
          line = *counts;
          env.inputs["counts"] = *counts;
        } else {
          line = read_counts_line(*file);
          env.inputs["file"] = *file;
        }
        env.inputs["correction"] = *correction;
        const TwoByTwoTable t = parse_counts(line);
        const auto probs = contingency::estimate_probs(t);
        const auto odds = contingency::estimate_or(t, *correction);
        env.results = {{"n", probs.n},
                       {"p_hat", probs.p_hat},
                       {"q_hat", probs.q_hat},
                       {"w_hat", probs.w_hat},
                       {"odds_ratio", odds.odds_ratio},
                       {"mu", odds.log_odds_ratio},
                       {"t", contingency::t_statistic(t, *correction)}};
      };
    });
  }

  // convert
  {
    auto* sub = add_sub(app, "convert",
                        "Convert between (p, q, w) and (Pr(D|E), Pr(D|~E), v); report OR, RR, gamma");
    auto vals = std::make_shared<std::array<double, 6>>();
    auto* p = sub->add_option("--p", (*vals)[0], "Pr(E|D)");
    auto* q = sub->add_option("--q", (*vals)[1], "Pr(E|~D)");
    auto* w = sub->add_option("--w", (*vals)[2], "Prevalence Pr(D)");
    auto* rde = sub->add_option("--rde", (*vals)[3], "Pr(D|E)");
    auto* rdne = sub->add_option("--rdne", (*vals)[4], "Pr(D|~E)");
    auto* v = sub->add_option("--v", (*vals)[5], "Pooled exposure Pr(E)");
    sub->callback([=, &env, &action] {
      action = [=, &env] {
        env.command = "convert";
        const auto& x = *vals;
        const bool cohort = p->count() && q->count() && w->count();
        const bool risk = rde->count() && rdne->count() && v->count();
        if (cohort == risk) {
          throw UsageError("convert needs exactly one of {--p --q --w} or {--rde --rdne --v}");
        }
        RiskParams r{};
        if (cohort) {
          env.inputs = {{"p", x[0]}, {"q", x[1]}, {"w", x[2]}};
          r = contingency::cohort_to_risk({x[0], x[1], x[2]});
          env.results = risk_json(r);
        } else {
          env.inputs = {{"r_exposed", x[3]}, {"r_unexposed", x[4]}, {"v", x[5]}};
          r = {x[3], x[4], x[5]};
          const CohortParams c = contingency::risk_to_cohort(r);
          env.results = {{"p", c.p}, {"q", c.q}, {"w", c.w}};
        }
        const auto summary = bounds::effect_summary(r);
        env.results["odds_ratio"] = summary.odds_ratio;
        env.results["relative_risk"] = summary.relative_risk;
        env.results["mu"] = summary.mu;
        env.results["sigma"] = summary.sigma;
        env.results["gamma"] = summary.gamma;
      };
    });
  }

  // bounds
  {
    auto* sub = add_sub(app, "bounds", "Variance-minimizing designs and the maximal standardized effect");
    auto vals = std::make_shared<std::array<double, 5>>();
    auto* odds = sub->add_option("--or", (*vals)[0], "Odds ratio");
    auto* rr = sub->add_option("--rr", (*vals)[1], "Relative risk (with --or: v_min)");
    auto* p = sub->add_option("--p", (*vals)[2], "Pr(E|D)");
    auto* q = sub->add_option("--q", (*vals)[3], "Pr(E|~D)");
    auto* w = sub->add_option("--w", (*vals)[4], "Case fraction at which to evaluate sigma^2(w)");
    rr->needs(odds);
    w->needs(p);
    p->needs(q);
    q->needs(p);
    sub->callback([=, &env, &action] {
      action = [=, &env] {
        env.command = "bounds";
        const auto& x = *vals;
        if (!odds->count() && !p->count()) throw UsageError("bounds needs --or or --p/--q");
        if (odds->count()) {
          env.inputs["or"] = x[0];
          const double ln_or = std::log(x[0]);
          const RiskParams opt = bounds::optimal_risk(x[0]);
          env.results["gamma_max"] = bounds::gamma_max(x[0]);
          env.results["kappa"] = bounds::kappa(ln_or);
          env.results["kappa_prime"] = bounds::kappa_prime(ln_or);
          env.results["optimal"] = risk_json(opt);
          env.results["optimal"]["gamma"] = bounds::gamma(opt);
          if (rr->count()) {
            env.inputs["rr"] = x[1];
            env.results["v_min"] = bounds::v_min(x[1], x[0]);
          }
        }
        if (p->count()) {
          env.inputs["p"] = x[2];
          env.inputs["q"] = x[3];
          const double wm = bounds::w_min(x[2], x[3]);
          env.results["w_min"] = wm;
          env.results["sigma2_w_min"] = bounds::sigma2_w(wm, x[2], x[3]);
          if (w->count()) {
            env.inputs["w"] = x[4];
            env.results["sigma2_w"] = bounds::sigma2_w(x[4], x[2], x[3]);
          }
        }
      };
    });
  }

  // constants
  {
    auto* sub = add_sub(app, "constants", "Root z of z tanh z = 1 and the constants it fixes");
    sub->callback([&env, &action] {
      action = [&env] {
        env.command = "constants";
        const auto& k = bounds::bound_constants();
        env.results = {{"z", k.z},
                       {"x_star", k.x_star},
                       {"or_star", k.or_star},
                       {"llc", k.llc},
                       {"p_star", k.p_star},
                       {"kappa_prime_at_x_star", bounds::kappa_prime(k.x_star)},
                       {"series_radius", kepler::series_radius()}};
      };
    });
  }

  // kepler
  {
    auto* kep = add_sub(app, "kepler", "Kepler equation M = E - e sin E");
    kep->require_subcommand(1);

    auto vals = std::make_shared<std::array<double, 2>>();
    auto order = std::make_shared<int>(0);

    auto* solve = add_sub(*kep, "solve", "Solve for the eccentric anomaly");
    solve->add_option("--m", (*vals)[0], "Mean anomaly (radians)")->required();
    solve->add_option("--eps", (*vals)[1], "Eccentricity")->required();
    solve->callback([=, &env, &action, &g] {
      action = [=, &env, &g] {
        env.command = "kepler solve";
        env.inputs = {{"m", (*vals)[0]}, {"eps", (*vals)[1]}, {"tol", g.tol}};
        const auto s = kepler::kepler_solve({(*vals)[0], (*vals)[1]}, g.tol);
        env.results = {{"eccentric_anomaly", s.eccentric_anomaly},
                       {"residual", s.residual},
                       {"method", kepler::to_string(s.method)},
                       {"iterations", s.iterations_or_order}};
      };
    });

    auto* series = add_sub(*kep, "series", "Truncated power series in the eccentricity");
    series->add_option("--m", (*vals)[0], "Mean anomaly (radians)")->required();
    series->add_option("--eps", (*vals)[1], "Eccentricity")->required();
    series->add_option("--order", *order, "Highest power of e")->required();
    series->callback([=, &env, &action] {
      action = [=, &env] {
        env.command = "kepler series";
        env.inputs = {{"m", (*vals)[0]}, {"eps", (*vals)[1]}, {"order", *order}};
        const auto s = kepler::kepler_series({(*vals)[0], (*vals)[1]}, *order);
        env.results = {{"eccentric_anomaly", s.eccentric_anomaly},
                       {"residual", s.residual},
                       {"order", s.iterations_or_order}};
      };
    });

    auto* table = add_sub(*kep, "diverge-table", "Series error against Newton for each order");
    table->add_option("--m", (*vals)[0], "Mean anomaly (radians)")->required();
    table->add_option("--eps", (*vals)[1], "Eccentricity")->required();
    table->add_option("--max-order", *order, "Highest order tabulated")->required();
    table->callback([=, &env, &action] {
      action = [=, &env] {
        env.command = "kepler diverge-table";
        env.inputs = {{"m", (*vals)[0]}, {"eps", (*vals)[1]}, {"max_order", *order}};
        const auto rows = kepler::divergence_table({(*vals)[0], (*vals)[1]}, *order);
        json out = json::array();
        for (const auto& row : rows) {
          out.push_back({{"order", row.order}, {"value", row.value}, {"abs_error", row.abs_error}});
        }
        env.results = {{"rows", out}};
      };
    });

    auto* mean = add_sub(*kep, "mean", "Mean anomaly E - e sin E");
    mean->add_option("--ecc-anomaly", (*vals)[0], "Eccentric anomaly (radians)")->required();
    mean->add_option("--eps", (*vals)[1], "Eccentricity")->required();
    mean->callback([=, &env, &action] {
      action = [=, &env] {
        env.command = "kepler mean";
        env.inputs = {{"ecc_anomaly", (*vals)[0]}, {"eps", (*vals)[1]}};
        env.results = {{"mean_anomaly", kepler::mean_anomaly((*vals)[0], (*vals)[1])}};
      };
    });
  }

  // prior
  {
    auto* pri = add_sub(app, "prior", "Flattest prior for the standardized effect");
    pri->require_subcommand(1);

    auto vals = std::make_shared<std::array<double, 3>>();
    auto* flat = add_sub(*pri, "flattest", "Prior variance from Pr(OR > x) = beta");
    flat->add_option("--x", (*vals)[0], "Odds ratio threshold (> 1)")->required();
    flat->add_option("--beta", (*vals)[1], "Tail probability in (0, 0.5)")->required();
    auto* sigma_m = flat->add_option("--sigma-m", (*vals)[2], "Assumed sigma (default: maximal)");
    flat->callback([=, &env, &action] {
      action = [=, &env] {
        env.command = "prior flattest";
        const auto& x = *vals;
        env.inputs = {{"x", x[0]}, {"beta", x[1]}};
        const double widest = prior::sigma_m_max(x[0]);
        double s = widest;
        if (sigma_m->count()) {
          s = x[2];
          env.inputs["sigma_m"] = s;
        }
        const auto spec = prior::flattest_prior(x[0], x[1], s);
        env.results = {{"sigma0", spec.sigma0},
                       {"sigma_m", spec.sigma_m},
                       {"sigma_m_max", widest},
                       {"z_beta", prior::p_to_z(x[1])}};
      };
    });

    auto* path = add_sub(*pri, "wm-pathway", "sigma(w_m) from the odds ratio and Pr(D|E)");
    path->add_option("--or", (*vals)[0], "Odds ratio")->required();
    path->add_option("--prde", (*vals)[1], "Pr(D|E)")->required();
    path->callback([=, &env, &action] {
      action = [=, &env] {
        env.command = "prior wm-pathway";
        env.inputs = {{"or", (*vals)[0]}, {"prde", (*vals)[1]}};
        const auto r = prior::sigma_wm_pathway((*vals)[0], (*vals)[1]);
        env.results = {{"r_unexposed", r.r_unexposed}, {"rr", r.rr},
                       {"v_m", r.v_m},                 {"sigma_vm", r.sigma_vm},
                       {"w_m", r.w_m},                 {"sigma_wm", r.sigma_wm},
                       {"p", r.p},                     {"q", r.q}};
      };
    });
  }

  // verify
  {
    auto* sub = add_sub(app, "verify", "Sample risk parameters and check the standardized-effect bound");
    auto samples = std::make_shared<std::uint64_t>(0);
    auto seed = std::make_shared<std::uint64_t>(42);
    auto workers = std::make_shared<unsigned>(1);
    sub->add_option("--samples", *samples, "Number of samples")->required();
    sub->add_option("--seed", *seed, "Random seed")->capture_default_str();
    sub->add_option("--workers", *workers, "Worker threads (does not change the result)")
        ->capture_default_str();
    sub->callback([=, &env, &action] {
      action = [=, &env] {
        env.command = "verify";
        env.inputs = {{"samples", *samples}, {"seed", *seed}};
        const auto rep = bounds::verify_bound(*samples, *seed, *workers);
        env.results = {{"samples", rep.samples},
                       {"violations", rep.violations},
                       {"max_gamma_observed", rep.max_gamma_observed},
                       {"bound", rep.bound},
                       {"arg_max", risk_json(rep.arg_max)}};
      };
    });
  }

  // pz
  {
    auto* sub = add_sub(app, "pz", "One-sided P-value <-> normal deviate");
    auto vals = std::make_shared<std::array<double, 2>>();
    auto* p = sub->add_option("--p", (*vals)[0], "P-value in (0, 1)");
    auto* z = sub->add_option("--z", (*vals)[1], "Normal deviate");
    p->excludes(z);
    sub->callback([=, &env, &action] {
      action = [=, &env] {
        env.command = "pz";
        if (p->count()) {
          env.inputs["p"] = (*vals)[0];
          env.results["z"] = prior::p_to_z((*vals)[0]);
        } else if (z->count()) {
          env.inputs["z"] = (*vals)[1];
          env.results["p"] = prior::z_to_p((*vals)[1]);
          env.results["cdf"] = numerics::normal_cdf((*vals)[1]);
        } else {
          throw UsageError("pz needs --p or --z");
        }
      };
    });
  }
}

}  // namespace

RunResult run(const std::vector<std::string>& args) {
  Globals g;
  Envelope env;
  std::function<void()> action;

  CLI::App app{"Standardized log odds ratio bounds, the Laplace limit constant and Kepler's equation",
               "llc"};
  build(app, g, env, action);

  auto fail = [&](int code, const std::string& message) {
    env.error = message;
    return RunResult{code, render(env, g.format == "text")};
  };

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    return {kExitOk, app.help()};
  } catch (const CLI::CallForAllHelp&) {
    return {kExitOk, app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    if (g.format != "text") g.format = "json";
    for (const CLI::App* sub : app.get_subcommands()) {
      env.command = sub->get_name();
      for (const CLI::App* nested : sub->get_subcommands()) {
        env.command += " " + nested->get_name();
      }
    }
    return fail(kExitUsageError, e.what());
  }

  try {
    action();
  } catch (const UsageError& e) {
    return fail(kExitUsageError, e.what());
  } catch (const llc::Error& e) {
    return fail(kExitDomainError, e.what());
  } catch (const std::exception& e) {
    return fail(kExitDomainError, e.what());
  }
  return {kExitOk, render(env, g.format == "text")};
}

}  // namespace llc::cli
