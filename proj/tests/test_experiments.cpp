#include "ssvcg/experiments.hpp"
#include "ssvcg/oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace ssvcg;

namespace {

ExperimentConfig small(std::size_t n, double alpha)
{
  ExperimentConfig config;
  config.n = n;
  config.alphas = {alpha};
  config.train_samples = 400;
  config.eval_samples = 2000;
  return config;
}

}  // namespace

TEST_SUITE("experiments")
{
  TEST_CASE("config merging")
  {
    ExperimentConfig base;
    base.n = 6;
    base.alphas = {0.3};
    ExperimentConfig const merged = merge_config(
        base, json::parse(R"({"n": 4, "surrogate": {"kind": "power_law", "alpha": 0.6}, "seed": 9,
                              "train_samples": 10, "with_cover": 0.2, "n_range": "3:5", "include_train": true})"));
    CHECK(*merged.n == 4);
    CHECK(merged.alphas == std::vector<double>{0.6});
    CHECK(merged.seed == 9);
    CHECK(*merged.train_samples == 10);
    CHECK(*merged.cover_epsilon == 0.2);
    CHECK(merged.n_range->first == 3);
    CHECK(merged.n_range->second == 5);
    CHECK(merged.include_train);

    CHECK(merge_config(base, json::parse(R"({"alpha": [0.2, 0.4]})")).alphas == std::vector<double>{0.2, 0.4});
    CHECK(merge_config(base, json::parse(R"({"n_range": [2, 8]})")).n_range->second == 8);
    CHECK(*merge_config(base, json::object()).n == 6);
    CHECK_THROWS_AS(merge_config(base, json::parse(R"({"nn": 4})")), UsageError);
    CHECK_THROWS_AS(merge_config(base, json::parse(R"({"n": "four"})")), UsageError);
    CHECK_THROWS_AS(merge_config(base, json::parse(R"({"n_range": "3-5"})")), UsageError);
    CHECK_THROWS_AS(merge_config(base, json::parse("[1]")), UsageError);
  }

  TEST_CASE("default counts and seeds")
  {
    ExperimentConfig config;
    config.seed = 5;
    CHECK(train_count_of(config, 4) == 20000);
    CHECK(eval_count_of(config, 4) == 200000);
    CHECK(eval_seed_of(config) != config.seed);
    config.eval_seed = 5;
    CHECK(eval_seed_of(config) == 5);
  }

  TEST_CASE("optimize report")
  {
    json const out = run_optimize(small(4, 0.5));
    CHECK(out["n"] == 4);
    CHECK(out["c"].size() == 2);
    CHECK(out["x"].size() == 2);
    double const t = out["t_numerical"].get<double>();
    CHECK(t >= 0.0);
    CHECK(t <= out["t_ssvcg_closed"].get<double>());
    CHECK(out["t_ssvcg_closed"].get<double>() == doctest::Approx(ssvcg_worst_ratio_closed(4, 0.5)));
    CHECK(out["x_bound"]["holds"] == true);
    CHECK(out["lp_stats"]["status"] == "optimal");
    CHECK(out["lp_stats"]["w_rows"] == 404);
    CHECK(out["lp_stats"]["f_rows"] == 403);
    CHECK(out["sample_bound"]["d"] == 3);
    CHECK(out["sample_bound"]["count"] == 278);

    CHECK(run_optimize(small(2, 0.5))["c"].empty());
  }

  TEST_CASE("optimize rejects bad configs")
  {
    ExperimentConfig config = small(4, 0.5);
    config.alphas = {};
    CHECK_THROWS_AS(run_optimize(config), UsageError);
    config.alphas = {1.0};
    CHECK_THROWS_AS(run_optimize(config), UsageError);
    config.alphas = {0.2, 0.3};
    CHECK_THROWS_AS(run_optimize(config), UsageError);
    config = small(1, 0.5);
    CHECK_THROWS_AS(run_optimize(config), UsageError);
    config.n.reset();
    CHECK_THROWS_AS(run_optimize(config), UsageError);
    config = small(4, 0.5);
    config.train_samples = 0;
    CHECK_THROWS_AS(run_optimize(config), UsageError);
  }

  TEST_CASE("evaluate report")
  {
    ExperimentConfig const config = small(4, 0.5);
    json const designed = run_optimize(config);
    json const out = run_evaluate(config, designed);
    CHECK(out["evaluated"] == 2000);
    CHECK(out["t_simulated"].get<double>() >= 0.0);
    CHECK(out["t_simulated"].get<double>() < ssvcg_worst_ratio_closed(4, 0.5));
    CHECK(out["violation_fraction"].get<double>() >= 0.0);
    CHECK(out["violation_fraction"].get<double>() <= 1.0);
    CHECK(out["eval_seed"] == eval_seed_of(config));

    // Evaluating on the training welfare profiles reproduces the training optimum as a floor.
    ExperimentConfig with_train = config;
    with_train.include_train = true;
    json const both = run_evaluate(with_train, designed);
    CHECK(both["evaluated"] == 2000 + 404);
    CHECK(both["t_simulated"].get<double>() >= designed["t_numerical"].get<double>() - 1e-12);

    json const zero = run_evaluate(config, json::parse(R"({"n": 4, "alpha": 0.5, "c": [0.0, 0.0]})"));
    CHECK(zero["violation_fraction"].is_null());
    CHECK(zero["t_simulated"].get<double>() <= ssvcg_worst_ratio_closed(4, 0.5) + 1e-12);

    CHECK_THROWS_AS(run_evaluate(config, json::parse(R"({"n": 4, "c": [0.1, -0.2]})")), UsageError);
    CHECK_THROWS_AS(run_evaluate(config, json::parse(R"({"n": 5, "c": [0.0, 0.0, 0.0]})")), UsageError);
    ExperimentConfig no_alpha = config;
    no_alpha.alphas.clear();
    CHECK_THROWS_AS(run_evaluate(no_alpha, json::parse(R"({"n": 4, "c": [0.0, 0.0]})")), UsageError);
  }

  TEST_CASE("sweep")
  {
    ExperimentConfig config;
    config.n_range = {{2, 4}};
    config.alphas = {0.3, 0.5};
    config.train_samples = 300;
    config.eval_samples = 1000;
    std::vector<SweepRow> const rows = run_sweep(config);
    REQUIRE(rows.size() == 6);
    for (SweepRow const &r : rows)
    {
      CHECK(r.t_numerical <= r.t_ssvcg + 1e-12);
      CHECK(r.t_ssvcg == doctest::Approx(ssvcg_worst_ratio_closed(r.n, r.alpha)).epsilon(1e-12));
      CHECK(r.t_scaled == doctest::Approx(r.t_numerical / (1.0 - r.alpha)));
    }
    std::string const csv = sweep_csv(rows);
    CHECK(csv.rfind("n,alpha,t_ssvcg,t_numerical,t_simulated,t_scaled\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
    CHECK(sweep_json(rows).size() == 6);
    CHECK(run_sweep(config)[5].t_simulated == rows[5].t_simulated);

    config.n_range = {{4, 3}};
    CHECK_THROWS_AS(run_sweep(config), UsageError);
    config.n_range.reset();
    CHECK_THROWS_AS(run_sweep(config), UsageError);
  }

  TEST_CASE("equilibrium report")
  {
    SurrogateSpec const spec = SurrogateSpec::power_law(0.5);
    bool passed = false;
    json const out = run_equilibrium(spec, std::vector<ValuationSpec>(4, ValuationSpec::power(2.0, 0.5)),
                                     RebateCoefficients::zero(4), passed);
    CHECK(passed);
    CHECK(out["theta_ne"].size() == 4);
    CHECK(out["vp_report"]["passed"] == true);
    CHECK(out["br_report"]["passed"] == true);
    CHECK(out["outcome"]["sigma_S"].get<double>() == doctest::Approx(4.0).epsilon(1e-9));

    CHECK_THROWS_AS(run_equilibrium(spec, {}, RebateCoefficients::zero(2), passed), UsageError);
    CHECK_THROWS_AS(run_equilibrium(spec, std::vector<ValuationSpec>(3, ValuationSpec::power(1.0, 0.5)),
                                    RebateCoefficients::zero(4), passed),
                    UsageError);
  }
}
