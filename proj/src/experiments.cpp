#include "ssvcg/experiments.hpp"

#include "ssvcg/oracles.hpp"
#include "ssvcg/rebate_design.hpp"
#include "ssvcg/sampling.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace ssvcg {

namespace {

void require_alpha(double alpha)
{
  if (!(alpha > 0.0 && alpha < 1.0))
  {
    throw UsageError("alpha must lie in (0, 1)");
  }
}

std::pair<std::size_t, std::size_t> parse_range(json const &value)
{
  if (value.is_array() && value.size() == 2)
  {
    return {value[0].get<std::size_t>(), value[1].get<std::size_t>()};
  }
  if (value.is_string())
  {
    std::string const text = value.get<std::string>();
    auto const colon = text.find(':');
    if (colon != std::string::npos)
    {
      try
      {
        return {std::stoul(text.substr(0, colon)), std::stoul(text.substr(colon + 1))};
      }
      catch (std::exception const &)
      {
      }
    }
  }
  throw UsageError("n_range must be \"A:B\" or [A, B]");
}

std::size_t single_n(ExperimentConfig const &config)
{
  if (!config.n)
  {
    throw UsageError("--n is required");
  }
  if (*config.n < 2)
  {
    throw UsageError("n must be at least 2");
  }
  return *config.n;
}

double single_alpha(ExperimentConfig const &config)
{
  if (config.alphas.size() != 1)
  {
    throw UsageError(config.alphas.empty() ? "--alpha is required" : "this command takes exactly one --alpha");
  }
  require_alpha(config.alphas.front());
  return config.alphas.front();
}

void require_counts(ExperimentConfig const &config)
{
  if ((config.train_samples && *config.train_samples < 1) || (config.eval_samples && *config.eval_samples < 1))
  {
    throw UsageError("sample counts must be at least 1");
  }
  if (config.cover_epsilon && !(*config.cover_epsilon > 0.0))
  {
    throw UsageError("cover radius must be positive");
  }
}

SamplingConfig sampling_of(ExperimentConfig const &config, std::size_t n)
{
  SamplingConfig sampling;
  sampling.random_samples = train_count_of(config, n);
  sampling.seed = config.seed;
  sampling.cover_epsilon = config.cover_epsilon;
  return sampling;
}

json design_json(RebateDesign const &design, std::size_t f_rows, std::size_t w_rows)
{
  json stats = to_json(design.stats);
  stats["f_rows"] = f_rows;
  stats["w_rows"] = w_rows;
  return stats;
}

}  // namespace

ExperimentConfig merge_config(ExperimentConfig base, json const &doc)
{
  if (!doc.is_object())
  {
    throw UsageError("config must be a JSON object");
  }
  static std::set<std::string> const known = {"n",         "n_range",       "alpha",        "surrogate",
                                               "seed",      "eval_seed",     "train_samples", "eval_samples",
                                               "with_cover", "epsilon",      "delta",        "include_train"};
  for (auto const &[key, value] : doc.items())
  {
    if (!known.count(key))
    {
      throw UsageError("unknown config key '" + key + "'");
    }
  }
  try
  {
    if (doc.contains("n"))
    {
      base.n = doc.at("n").get<std::size_t>();
    }
    if (doc.contains("n_range"))
    {
      base.n_range = parse_range(doc.at("n_range"));
    }
    if (doc.contains("alpha"))
    {
      json const &a = doc.at("alpha");
      base.alphas = a.is_array() ? a.get<std::vector<double>>() : std::vector<double>{a.get<double>()};
    }
    if (doc.contains("surrogate"))
    {
      base.alphas = {surrogate_from_json(doc).alpha()};
    }
    if (doc.contains("seed"))
    {
      base.seed = doc.at("seed").get<std::uint64_t>();
    }
    if (doc.contains("eval_seed"))
    {
      base.eval_seed = doc.at("eval_seed").get<std::uint64_t>();
    }
    if (doc.contains("train_samples"))
    {
      base.train_samples = doc.at("train_samples").get<std::size_t>();
    }
    if (doc.contains("eval_samples"))
    {
      base.eval_samples = doc.at("eval_samples").get<std::size_t>();
    }
    if (doc.contains("with_cover"))
    {
      base.cover_epsilon = doc.at("with_cover").get<double>();
    }
    if (doc.contains("epsilon"))
    {
      base.epsilon = doc.at("epsilon").get<double>();
    }
    if (doc.contains("delta"))
    {
      base.delta = doc.at("delta").get<double>();
    }
    if (doc.contains("include_train"))
    {
      base.include_train = doc.at("include_train").get<bool>();
    }
  }
  catch (json::exception const &e)
  {
    throw UsageError(std::string("bad config value: ") + e.what());
  }
  catch (std::domain_error const &e)
  {
    throw UsageError(e.what());
  }
  return base;
}

std::uint64_t eval_seed_of(ExperimentConfig const &config)
{
  return config.eval_seed.value_or(config.seed + 0x9E3779B97F4A7C15ULL);
}

std::size_t train_count_of(ExperimentConfig const &config, std::size_t n)
{
  return config.train_samples.value_or(5000 * n);
}

std::size_t eval_count_of(ExperimentConfig const &config, std::size_t n)
{
  return config.eval_samples.value_or(50000 * n);
}

json run_optimize(ExperimentConfig const &config)
{
  std::size_t const n = single_n(config);
  double const alpha = single_alpha(config);
  require_counts(config);
  SurrogateSpec const spec = SurrogateSpec::power_law(alpha);
  RebateDesign const design = optimize_rebates(spec, n, sampling_of(config, n));
  std::size_t const d = n - 1;

  json out;
  out["n"] = n;
  out["alpha"] = alpha;
  out["surrogate"] = to_json(spec);
  out["c"] = design.c.free();
  out["x"] = design.x.x;
  out["t_numerical"] = design.t;
  out["t_ssvcg_closed"] = ssvcg_worst_ratio_closed(n, alpha);
  out["constants"] = to_json(theory_constants(spec, n));
  out["lp_stats"] = design_json(design, design.f_rows, design.w_rows);
  out["x_bound"] = {{"Bn", design.bn}, {"holds", design.within_x_bound}};
  out["samples"] = {{"seed", config.seed},
                    {"random", train_count_of(config, n)},
                    {"cover_epsilon", config.cover_epsilon ? json(*config.cover_epsilon) : json(nullptr)}};
  out["sample_bound"] = {{"epsilon", config.epsilon},
                         {"delta", config.delta},
                         {"d", d},
                         {"count", calafiore_campi_count(config.epsilon, config.delta, d)}};
  return out;
}

json run_evaluate(ExperimentConfig const &config, json const &c_doc)
{
  RebateCoefficients c;
  try
  {
    c = coefficients_from_json(c_doc);
  }
  catch (json::exception const &e)
  {
    throw UsageError(std::string("bad coefficient file: ") + e.what());
  }
  catch (std::invalid_argument const &e)
  {
    throw UsageError(std::string("bad coefficient file: ") + e.what());
  }
  catch (std::domain_error const &e)
  {
    throw UsageError(std::string("bad coefficient file: ") + e.what());
  }
  std::size_t const n = c.agents();
  if (n < 2)
  {
    throw UsageError("coefficient file must have n >= 2");
  }
  if (config.n && *config.n != n)
  {
    throw UsageError("--n disagrees with the coefficient file");
  }
  double alpha = 0.0;
  if (!config.alphas.empty())
  {
    alpha = single_alpha(config);
  }
  else if (c_doc.contains("alpha"))
  {
    alpha = c_doc.at("alpha").get<double>();
    require_alpha(alpha);
  }
  else
  {
    throw UsageError("--alpha is required when the coefficient file has none");
  }
  require_counts(config);
  SurrogateSpec const spec = SurrogateSpec::power_law(alpha);

  std::vector<BidProfile> samples = random_ordered_samples(n, eval_count_of(config, n), eval_seed_of(config));
  if (config.include_train)
  {
    TrainingSet const train = assemble_samples(n, sampling_of(config, n));
    samples.insert(samples.end(), train.w_samples.begin(), train.w_samples.end());
  }
  WorstCase const worst = worst_case_ratio(spec, c, samples);

  json out;
  out["n"] = n;
  out["alpha"] = alpha;
  out["c"] = c.free();
  out["t_simulated"] = worst.value;
  out["argmax_profile"] = to_json(worst.argmax);
  out["evaluated"] = worst.evaluated;
  out["skipped"] = worst.skipped;
  out["eval_seed"] = eval_seed_of(config);
  out["include_train"] = config.include_train;
  if (c_doc.contains("t_numerical"))
  {
    XVariables x = c_to_x(c);
    x.t = c_doc.at("t_numerical").get<double>();
    out["t_numerical"] = x.t;
    out["violation_fraction"] = estimate_violation(spec, x, samples);
  }
  else
  {
    out["violation_fraction"] = nullptr;
  }
  return out;
}

std::vector<SweepRow> run_sweep(ExperimentConfig const &config)
{
  std::pair<std::size_t, std::size_t> range;
  if (config.n_range)
  {
    range = *config.n_range;
  }
  else if (config.n)
  {
    range = {*config.n, *config.n};
  }
  else
  {
    throw UsageError("--n-range or --n is required");
  }
  if (range.first < 2 || range.second < range.first)
  {
    throw UsageError("n range must satisfy 2 <= A <= B");
  }
  if (config.alphas.empty())
  {
    throw UsageError("at least one --alpha is required");
  }
  for (double alpha : config.alphas)
  {
    require_alpha(alpha);
  }
  require_counts(config);

  std::vector<SweepRow> rows;
  for (std::size_t n = range.first; n <= range.second; ++n)
  {
    TrainingSet const train = assemble_samples(n, sampling_of(config, n));
    std::vector<BidProfile> const fresh = random_ordered_samples(n, eval_count_of(config, n), eval_seed_of(config));
    for (double alpha : config.alphas)
    {
      SurrogateSpec const spec = SurrogateSpec::power_law(alpha);
      RebateDesign const design = optimize_rebates(spec, n, train);
      SweepRow row;
      row.n = n;
      row.alpha = alpha;
      row.t_ssvcg = worst_case_ratio(spec, RebateCoefficients::zero(n), train.w_samples).value;
      row.t_numerical = design.t;
      row.t_simulated = worst_case_ratio(spec, design.c, fresh).value;
      row.t_scaled = design.t / (1.0 - alpha);
      rows.push_back(row);
    }
  }
  return rows;
}

std::string sweep_csv(std::vector<SweepRow> const &rows)
{
  std::ostringstream os;
  os << "n,alpha,t_ssvcg,t_numerical,t_simulated,t_scaled\n";
  char buffer[256];
  for (SweepRow const &r : rows)
  {
    std::snprintf(buffer, sizeof buffer, "%zu,%.9g,%.9g,%.9g,%.9g,%.9g\n", r.n, r.alpha, r.t_ssvcg, r.t_numerical,
                  r.t_simulated, r.t_scaled);
    os << buffer;
  }
  return os.str();
}

json sweep_json(std::vector<SweepRow> const &rows)
{
  json out = json::array();
  for (SweepRow const &r : rows)
  {
    out.push_back({{"n", r.n},
                   {"alpha", r.alpha},
                   {"t_ssvcg", r.t_ssvcg},
                   {"t_numerical", r.t_numerical},
                   {"t_simulated", r.t_simulated},
                   {"t_scaled", r.t_scaled}});
  }
  return out;
}

json run_equilibrium(SurrogateSpec const &spec, std::vector<ValuationSpec> const &valuations,
                     RebateCoefficients const &c, bool &passed)
{
  if (valuations.empty())
  {
    throw UsageError("valuations must not be empty");
  }
  if (c.agents() != valuations.size())
  {
    throw UsageError("coefficients are for " + std::to_string(c.agents()) + " agents, valuations for " +
                     std::to_string(valuations.size()));
  }
  VpReport const vp = verify_equilibrium_vp(valuations, spec, c);

  json vp_agents = json::array();
  for (AgentVp const &a : vp.agents)
  {
    vp_agents.push_back({{"utility", a.utility},
                         {"q", a.deficit},
                         {"rebate", a.rebate},
                         {"utility_ok", a.utility_ok},
                         {"q_ok", a.deficit_ok},
                         {"rebate_ok", a.rebate_ok}});
  }

  bool br_passed = true;
  json br_agents = json::array();
  for (std::size_t i = 0; i < valuations.size(); ++i)
  {
    BestResponseReport const br = verify_best_response(valuations, spec, vp.theta, i, c);
    br_passed = br_passed && br.is_best_response && br.rebate_constant;
    br_agents.push_back({{"agent", i},
                         {"is_best_response", br.is_best_response},
                         {"best_gain", br.best_gain},
                         {"best_bid", br.best_bid},
                         {"utility", br.utility},
                         {"rebate_constant", br.rebate_constant}});
  }

  passed = vp.passed && br_passed;
  return {
    {"theta_ne", vp.theta.vector()},
    {"outcome", to_json(vp.outcome)},
    {"vp_report", {{"passed", vp.passed}, {"agents", vp_agents}}},
    {"br_report", {{"passed", br_passed}, {"agents", br_agents}}},
  };
}

}  // namespace ssvcg
