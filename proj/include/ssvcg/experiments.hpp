#pragma once

#include "ssvcg/equilibrium.hpp"
#include "ssvcg/json_io.hpp"
#include "ssvcg/mechanism.hpp"
#include "ssvcg/surrogate.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ssvcg {

/// Bad flags or configuration; the CLI maps it to exit code 2.
class UsageError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig
{
  std::optional<std::size_t>                         n;
  std::optional<std::pair<std::size_t, std::size_t>> n_range;
  std::vector<double>                                alphas;
  std::uint64_t                                      seed = 1;
  std::optional<std::uint64_t>                       eval_seed;
  /// Random training profiles; defaults to 5000 n.
  std::optional<std::size_t>                         train_samples;
  /// Fresh evaluation profiles; defaults to 50000 n.
  std::optional<std::size_t>                         eval_samples;
  std::optional<double>                              cover_epsilon;
  /// Violation level and confidence for the reported sample-count bound.
  double                                             epsilon = 0.1;
  double                                             delta = 0.01;
  /// Evaluate also on the training welfare samples.
  bool                                               include_train = false;
};

/// Applies the keys of a JSON config object on top of `base`.
ExperimentConfig merge_config(ExperimentConfig base, json const &doc);

std::uint64_t eval_seed_of(ExperimentConfig const &config);
std::size_t train_count_of(ExperimentConfig const &config, std::size_t n);
std::size_t eval_count_of(ExperimentConfig const &config, std::size_t n);

/// Designs rebates for one (n, alpha): {n, alpha, c, x, t_numerical, constants, lp_stats, ...}.
json run_optimize(ExperimentConfig const &config);

/// Worst-case ratio of the coefficients in `c_doc` on fresh samples.
json run_evaluate(ExperimentConfig const &config, json const &c_doc);

struct SweepRow
{
  std::size_t n = 0;
  double      alpha = 0.0;
  double      t_ssvcg = 0.0;      ///< no rebates, sampled with the all-ones profile
  double      t_numerical = 0.0;  ///< optimal value of the sampled program
  double      t_simulated = 0.0;  ///< designed rebates on fresh samples
  double      t_scaled = 0.0;     ///< t_numerical / (1 - alpha)
};

std::vector<SweepRow> run_sweep(ExperimentConfig const &config);
std::string sweep_csv(std::vector<SweepRow> const &rows);
json sweep_json(std::vector<SweepRow> const &rows);

/// Nash bids, outcome under `c`, participation and best-response reports.
/// Sets `passed` when every check holds.
json run_equilibrium(SurrogateSpec const &spec, std::vector<ValuationSpec> const &valuations,
                     RebateCoefficients const &c, bool &passed);

}  // namespace ssvcg
