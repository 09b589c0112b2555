#include "ssvcg/equilibrium.hpp"
#include "ssvcg/mechanism.hpp"
#include "ssvcg/oracles.hpp"
#include "ssvcg/rebate_design.hpp"

#include "generators.hpp"

#include <doctest.h>

#include <cmath>

using namespace ssvcg;

namespace {

std::vector<ValuationSpec> identical(std::size_t n, double w, double beta)
{
  return std::vector<ValuationSpec>(n, ValuationSpec::power(w, beta));
}

}  // namespace

TEST_SUITE("equilibrium")
{
  TEST_CASE("valuations")
  {
    ValuationSpec const v = ValuationSpec::power(2.0, 0.5);
    CHECK(v.value(0.25) == doctest::Approx(1.0));
    CHECK(v.value(0.0) == 0.0);
    CHECK(v.marginal(0.0).is_infinite());
    CHECK(v.marginal(0.25).value() == doctest::Approx(2.0));
    CHECK_THROWS_AS(ValuationSpec::power(-1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(ValuationSpec::power(1.0, 1.0), std::domain_error);
  }

  TEST_CASE("true efficient allocation")
  {
    Allocation const same = true_efficient_allocation(identical(4, 2.0, 0.5));
    for (double a : same.shares)
    {
      CHECK(a == doctest::Approx(0.25).epsilon(1e-9));
    }

    // With a common exponent the shares are proportional to w^(1/beta).
    Allocation const pair = true_efficient_allocation({ValuationSpec::power(2.0, 0.5), ValuationSpec::power(1.0, 0.5)});
    CHECK(pair[0] == doctest::Approx(0.8).epsilon(1e-9));
    CHECK(pair[1] == doctest::Approx(0.2).epsilon(1e-9));

    Allocation const tiny = true_efficient_allocation({ValuationSpec::power(1e-8, 0.5), ValuationSpec::power(1.0, 0.5)});
    CHECK(tiny[0] >= 0.0);
    CHECK(tiny[0] < 1e-12);
    CHECK(tiny.total() == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("property: efficient allocation equalizes marginal values")
  {
    testing::Gen gen(71);
    for (int trial = 0; trial < 200; ++trial)
    {
      std::size_t const n = gen.integer(2, 8);
      std::vector<ValuationSpec> vals;
      for (std::size_t i = 0; i < n; ++i)
      {
        vals.push_back(ValuationSpec::power(gen.uniform(0.1, 5.0), gen.uniform(0.1, 0.9)));
      }
      Allocation const a = true_efficient_allocation(vals);
      CHECK(a.total() == doctest::Approx(1.0).epsilon(1e-9));
      double const level = vals[0].marginal(a[0]).value();
      for (std::size_t i = 1; i < n; ++i)
      {
        CHECK(vals[i].marginal(a[i]).value() == doctest::Approx(level).epsilon(1e-6));
      }
    }
  }

  TEST_CASE("Nash bids")
  {
    SurrogateSpec const spec = SurrogateSpec::power_law(0.5);
    BidProfile const four = nash_bids(identical(4, 2.0, 0.5), spec);
    for (std::size_t i = 0; i < 4; ++i)
    {
      CHECK(four[i] == doctest::Approx(2.0).epsilon(1e-9));
    }
    BidProfile const pair = nash_bids({ValuationSpec::power(2.0, 0.5), ValuationSpec::power(1.0, 0.5)}, spec);
    CHECK(pair[0] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(pair[1] == doctest::Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("property: symmetric Nash bid matches its closed form")
  {
    for (double alpha : testing::alphas)
    {
      SurrogateSpec const spec = SurrogateSpec::power_law(alpha);
      for (double beta : {0.2, 0.5, 0.8})
      {
        for (std::size_t n : {2u, 3u, 7u})
        {
          double const w = 1.7;
          BidProfile const theta = nash_bids(identical(n, w, beta), spec);
          double const vprime = w * (1.0 - beta) * std::pow(double(n), beta);
          CHECK(theta[0] == doctest::Approx(mu_ne_closed(vprime, n, alpha)).epsilon(1e-8));
          // The surrogate allocation at the Nash bids is the true efficient one.
          Allocation const a = efficient_allocation(spec, theta);
          CHECK(a[n - 1] == doctest::Approx(1.0 / double(n)).epsilon(1e-9));
        }
      }
    }
  }

  TEST_CASE("welfare and surplus at the symmetric equilibrium")
  {
    SurrogateSpec const spec = SurrogateSpec::power_law(0.5);
    std::vector<ValuationSpec> const vals = identical(4, 2.0, 0.5);
    BidProfile const theta = nash_bids(vals, spec);
    double const vprime = vals[0].marginal(0.25).value();
    CHECK(surrogate_welfare(spec, theta) == doctest::Approx(vprime / 0.5).epsilon(1e-9));
    CHECK(surrogate_welfare(spec, theta) == doctest::Approx(4.0).epsilon(1e-9));

    double previous_ps = 0.0;
    double previous_ratio = 0.0;
    for (std::size_t n = 3; n <= 12; ++n)
    {
      std::vector<ValuationSpec> const group = identical(n, 2.0, 0.5);
      BidProfile const ne = nash_bids(group, spec);
      double const ps = clarke_surplus(spec, ne);
      double const ratio = ps / group[0].marginal(1.0 / double(n)).value();
      CHECK(ps > previous_ps);
      CHECK(ratio > previous_ratio);
      CHECK(ratio < 1.0);
      previous_ps = ps;
      previous_ratio = ratio;
    }
  }

  TEST_CASE("best response at the symmetric equilibrium")
  {
    SurrogateSpec const spec = SurrogateSpec::power_law(0.5);
    std::vector<ValuationSpec> const vals = identical(4, 2.0, 0.5);
    BidProfile const theta{2.0, 2.0, 2.0, 2.0};
    for (std::size_t agent = 0; agent < 4; ++agent)
    {
      BestResponseReport const r = verify_best_response(vals, spec, theta, agent);
      CHECK(r.is_best_response);
      CHECK(r.best_gain <= 1e-6);
      CHECK(r.evaluated >= 201);
      CHECK(r.rebate_constant);
    }

    BestResponseReport const off = verify_best_response(vals, spec, BidProfile{3.0, 2.0, 2.0, 2.0}, 0);
    CHECK_FALSE(off.is_best_response);
    CHECK(off.best_gain > 1e-6);
    CHECK(off.best_bid == doctest::Approx(2.0).epsilon(1e-3));

    BestResponseReport const silent = verify_best_response(vals, spec, BidProfile{0.0, 2.0, 2.0, 2.0}, 0);
    CHECK(silent.utility == doctest::Approx(0.0).scale(1.0));
    CHECK_FALSE(silent.is_best_response);
  }

  TEST_CASE("rebates do not move the best response")
  {
    SurrogateSpec const spec = SurrogateSpec::power_law(0.5);
    std::vector<ValuationSpec> const vals = identical(5, 1.0, 0.5);
    BidProfile const theta = nash_bids(vals, spec);
    SamplingConfig config;
    config.random_samples = 500;
    RebateCoefficients const c = optimize_rebates(spec, 5, config).c;
    for (std::size_t agent = 0; agent < 5; ++agent)
    {
      BestResponseReport const plain = verify_best_response(vals, spec, theta, agent);
      BestResponseReport const rebated = verify_best_response(vals, spec, theta, agent, c);
      CHECK(rebated.is_best_response);
      CHECK(rebated.rebate_constant);
      CHECK(rebated.best_gain == doctest::Approx(plain.best_gain).epsilon(1e-9).scale(1.0));
    }
  }

  TEST_CASE("voluntary participation at equilibrium")
  {
    SurrogateSpec const spec = SurrogateSpec::power_law(0.5);
    std::vector<ValuationSpec> const vals = identical(4, 2.0, 0.5);
    VpReport const plain = verify_equilibrium_vp(vals, spec, RebateCoefficients::zero(4));
    CHECK(plain.passed);
    for (AgentVp const &agent : plain.agents)
    {
      CHECK(agent.utility >= -1e-9);
      CHECK(agent.deficit <= 1e-9);
      CHECK(agent.rebate == 0.0);
    }

    RebateCoefficients const c = optimize_rebates(spec, 4).c;
    VpReport const rebated = verify_equilibrium_vp(vals, spec, c);
    CHECK(rebated.passed);
    for (std::size_t i = 0; i < 4; ++i)
    {
      CHECK(rebated.agents[i].rebate >= -1e-12);
      CHECK(rebated.agents[i].utility >= plain.agents[i].utility - 1e-12);
    }

    RebateCoefficients const harmful(4, {-0.5, 0.0});
    CHECK_FALSE(verify_equilibrium_vp(vals, spec, harmful).passed);
  }

  TEST_CASE("property: participation holds for random heterogeneous agents")
  {
    testing::Gen gen(72);
    SurrogateSpec const spec = SurrogateSpec::power_law(0.5);
    for (int trial = 0; trial < 100; ++trial)
    {
      std::size_t const n = gen.integer(2, 7);
      std::vector<ValuationSpec> vals;
      for (std::size_t i = 0; i < n; ++i)
      {
        vals.push_back(ValuationSpec::power(gen.uniform(0.1, 5.0), gen.uniform(0.1, 0.9)));
      }
      CHECK(verify_equilibrium_vp(vals, spec, RebateCoefficients::zero(n)).passed);
    }
  }

  TEST_CASE("valuation audit")
  {
    CHECK_NOTHROW(validate_valuations(identical(3, 1.0, 0.5)));
    CHECK_THROWS_AS(validate_valuations({}), std::invalid_argument);
    CHECK_THROWS_AS(validate_valuations(identical(1, 1.0, 0.5)), std::invalid_argument);
    std::vector<ValuationSpec> const bounded{
        ValuationSpec::power(1.0, 0.5),
        ValuationSpec::custom([](double a) { return a; }, [](double) { return 1.0; })};
    CHECK_THROWS_AS(validate_valuations(bounded), std::invalid_argument);
    std::vector<ValuationSpec> const convex{
        ValuationSpec::power(1.0, 0.5), ValuationSpec::power(1.0, 0.5),
        ValuationSpec::custom([](double a) { return a * a; }, [](double a) { return 2.0 * a; })};
    CHECK_THROWS_AS(validate_valuations(convex), std::invalid_argument);
  }
}
