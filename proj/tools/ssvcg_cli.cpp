#include "ssvcg/experiments.hpp"
#include "ssvcg/json_io.hpp"
#include "ssvcg/properties.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using ssvcg::json;
using ssvcg::UsageError;

struct Flags
{
  std::optional<std::size_t>   n;
  std::optional<std::string>   n_range;
  std::vector<double>          alphas;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> eval_seed;
  std::optional<std::size_t>   train_samples;
  std::optional<std::size_t>   eval_samples;
  std::optional<double>        epsilon;
  std::optional<double>        delta;
  std::optional<double>        with_cover;
  std::string                  out;
  std::string                  format = "auto";
  std::string                  config;
  std::string                  c_file;
  std::string                  valuations;
  bool                         include_train = false;
  bool                         verbose = false;
  std::size_t                  trials = 200;
  std::string                  fault;
};

json load(std::string const &path)
{
  try
  {
    return ssvcg::read_json_file(path);
  }
  catch (std::invalid_argument const &e)
  {
    throw UsageError(e.what());
  }
}

ssvcg::ExperimentConfig build_config(Flags const &flags)
{
  ssvcg::ExperimentConfig config;
  config.n = flags.n;
  if (flags.n_range)
  {
    json range = *flags.n_range;
    config = ssvcg::merge_config(config, json{{"n_range", range}});
  }
  config.alphas = flags.alphas;
  config.seed = flags.seed.value_or(config.seed);
  config.eval_seed = flags.eval_seed;
  config.train_samples = flags.train_samples;
  config.eval_samples = flags.eval_samples;
  config.cover_epsilon = flags.with_cover;
  config.epsilon = flags.epsilon.value_or(config.epsilon);
  config.delta = flags.delta.value_or(config.delta);
  config.include_train = flags.include_train;
  if (!flags.config.empty())
  {
    config = ssvcg::merge_config(config, load(flags.config));
  }
  return config;
}

void emit(Flags const &flags, std::string const &text)
{
  if (flags.out.empty())
  {
    std::cout << text;
    return;
  }
  std::ofstream file(flags.out);
  if (!file)
  {
    throw UsageError("cannot write '" + flags.out + "'");
  }
  file << text;
}

void require_json(Flags const &flags)
{
  if (flags.format == "csv")
  {
    throw UsageError("this command only writes JSON");
  }
}

double alpha_for(ssvcg::ExperimentConfig const &config)
{
  if (config.alphas.size() != 1)
  {
    throw UsageError(config.alphas.empty() ? "--alpha is required" : "this command takes exactly one --alpha");
  }
  try
  {
    return ssvcg::SurrogateSpec::power_law(config.alphas.front()).alpha();
  }
  catch (std::domain_error const &e)
  {
    throw UsageError(e.what());
  }
}

int run(std::string const &command, Flags const &flags)
{
  if (command == "check")
  {
    ssvcg::CheckOptions options;
    options.seed = flags.seed.value_or(options.seed);
    options.trials = flags.trials;
    options.fault = flags.fault;
    std::vector<ssvcg::PropertyResult> const results = ssvcg::run_property_suite(options);
    std::size_t failed = 0;
    for (ssvcg::PropertyResult const &r : results)
    {
      failed += r.failures > 0 ? 1 : 0;
      if (flags.verbose || r.failures > 0)
      {
        std::printf("%-36s trials=%zu failures=%zu worst=%.3g\n", r.name.c_str(), r.trials, r.failures, r.worst);
      }
    }
    std::printf("check: %zu properties, %zu failing\n", results.size(), failed);
    return failed == 0 ? 0 : 1;
  }

  ssvcg::ExperimentConfig const config = build_config(flags);
  if (command == "optimize")
  {
    require_json(flags);
    emit(flags, ssvcg::run_optimize(config).dump(2) + "\n");
    return 0;
  }
  if (command == "evaluate")
  {
    require_json(flags);
    if (flags.c_file.empty())
    {
      throw UsageError("--c-file is required");
    }
    emit(flags, ssvcg::run_evaluate(config, load(flags.c_file)).dump(2) + "\n");
    return 0;
  }
  if (command == "sweep")
  {
    std::vector<ssvcg::SweepRow> const rows = ssvcg::run_sweep(config);
    emit(flags, flags.format == "json" ? ssvcg::sweep_json(rows).dump(2) + "\n" : ssvcg::sweep_csv(rows));
    return 0;
  }
  if (command == "equilibrium")
  {
    require_json(flags);
    if (flags.valuations.empty())
    {
      throw UsageError("--valuations is required");
    }
    std::vector<ssvcg::ValuationSpec> valuations;
    ssvcg::RebateCoefficients c;
    try
    {
      valuations = ssvcg::valuations_from_json(load(flags.valuations));
      c = flags.c_file.empty() ? ssvcg::RebateCoefficients::zero(valuations.size())
                               : ssvcg::coefficients_from_json(load(flags.c_file));
    }
    catch (json::exception const &e)
    {
      throw UsageError(e.what());
    }
    catch (std::invalid_argument const &e)
    {
      throw UsageError(e.what());
    }
    catch (std::domain_error const &e)
    {
      throw UsageError(e.what());
    }
    ssvcg::SurrogateSpec const spec = ssvcg::SurrogateSpec::power_law(alpha_for(config));
    bool passed = false;
    json const report = ssvcg::run_equilibrium(spec, valuations, c, passed);
    emit(flags, report.dump(2) + "\n");
    return passed ? 0 : 1;
  }
  throw UsageError("unknown command");
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Scalar-bid VCG mechanism with designed linear rebates"};
  app.require_subcommand(1);
  app.fallthrough();

  Flags flags;
  app.add_option("--n", flags.n, "number of agents");
  app.add_option("--n-range", flags.n_range, "agent counts A:B (sweep)");
  app.add_option("--alpha", flags.alphas, "surrogate exponent, U(a) = a^(1-alpha); repeatable")->take_all();
  app.add_option("--seed", flags.seed, "training sample seed");
  app.add_option("--eval-seed", flags.eval_seed, "evaluation sample seed");
  app.add_option("--train-samples", flags.train_samples, "random training profiles (default 5000 n)");
  app.add_option("--eval-samples", flags.eval_samples, "random evaluation profiles (default 50000 n)");
  app.add_option("--epsilon", flags.epsilon, "violation level for the sample-count bound");
  app.add_option("--delta", flags.delta, "confidence for the sample-count bound");
  app.add_option("--with-cover", flags.with_cover, "add an epsilon-cover of this radius to the training set");
  app.add_option("--out", flags.out, "output path (default stdout)");
  app.add_option("--format", flags.format, "json or csv")->check(CLI::IsMember({"auto", "json", "csv"}));
  app.add_option("--config", flags.config, "JSON config; its keys override flags");
  app.add_option("--c-file", flags.c_file, "coefficients written by optimize");
  app.add_option("--valuations", flags.valuations, "JSON list of agent valuations");
  app.add_flag("--include-train", flags.include_train, "evaluate also on the training profiles");
  app.add_flag("-v,--verbose", flags.verbose, "per-property counts (check)");
  app.add_option("--trials", flags.trials, "random trials per property (check)");
  app.add_option("--inject-fault", flags.fault)->group("");

  std::string command;
  for (auto [name, help] : {std::pair{"optimize", "design rebate coefficients for one (n, alpha)"},
                            std::pair{"evaluate", "worst-case ratio of stored coefficients on fresh profiles"},
                            std::pair{"sweep", "optimize and evaluate over a range of n and alphas"},
                            std::pair{"check", "run the invariant suite"},
                            std::pair{"equilibrium", "Nash bids, participation and best-response checks"}})
  {
    app.add_subcommand(name, help)->callback([&command, name = std::string(name)] { command = name; });
  }

  try
  {
    app.parse(argc, argv);
  }
  catch (CLI::Success const &e)
  {
    return app.exit(e);
  }
  catch (CLI::ParseError const &e)
  {
    app.exit(e);
    return 2;
  }

  try
  {
    return run(command, flags);
  }
  catch (UsageError const &e)
  {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }
  catch (std::exception const &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
