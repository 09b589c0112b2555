#include "ssvcg/equilibrium.hpp"

#include "ssvcg/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ssvcg {

ValuationSpec ValuationSpec::power(double w, double beta)
{
  if (!(w > 0.0) || !std::isfinite(w))
  {
    throw std::domain_error("power valuation weight must be positive");
  }
  if (!(beta > 0.0 && beta < 1.0))
  {
    throw std::domain_error("power valuation beta must lie in (0, 1)");
  }
  return ValuationSpec(PowerValuation{w, beta});
}

ValuationSpec ValuationSpec::custom(std::function<double(double)> v, std::function<double(double)> v_prime)
{
  if (!v || !v_prime)
  {
    throw std::invalid_argument("custom valuation needs both v and v'");
  }
  return ValuationSpec(CustomValuation{std::move(v), std::move(v_prime)});
}

double ValuationSpec::value(double a) const
{
  if (!(a >= 0.0 && a <= 1.0))
  {
    throw std::domain_error("valuation evaluated outside [0, 1]");
  }
  if (auto const *p = std::get_if<PowerValuation>(&kind_))
  {
    return a == 0.0 ? 0.0 : p->w * std::pow(a, 1.0 - p->beta);
  }
  return std::get<CustomValuation>(kind_).v(a);
}

Marginal ValuationSpec::marginal(double a) const
{
  if (!(a >= 0.0 && a <= 1.0))
  {
    throw std::domain_error("marginal valuation evaluated outside [0, 1]");
  }
  if (auto const *p = std::get_if<PowerValuation>(&kind_))
  {
    if (a == 0.0)
    {
      return Marginal::infinite();
    }
    return Marginal::finite(p->w * (1.0 - p->beta) * std::pow(a, -p->beta));
  }
  double const d = std::get<CustomValuation>(kind_).v_prime(a);
  if (std::isnan(d))
  {
    throw std::domain_error("custom marginal valuation returned NaN");
  }
  return std::isinf(d) ? Marginal::infinite() : Marginal::finite(d);
}

void validate_valuations(std::vector<ValuationSpec> const &valuations, std::size_t grid_size)
{
  std::size_t unbounded = 0;
  for (std::size_t i = 0; i < valuations.size(); ++i)
  {
    ValuationSpec const &v = valuations[i];
    SurrogateSpec const as_utility =
      SurrogateSpec::custom([&v](double a) { return v.value(a); },
                            [&v](double a) { return v.marginal(a).is_infinite() ? 1e300 : v.marginal(a).value(); });
    AssumptionReport const report = check_assumptions(as_utility, grid_size);
    if (!report.passed)
    {
      AssumptionViolation const &first = report.violations.front();
      throw std::invalid_argument("valuation " + std::to_string(i) + " fails the grid audit (" +
                                  to_string(first.kind) + " at a=" + std::to_string(first.a) + ")");
    }
    unbounded += v.marginal(0.0).is_infinite() ? 1 : 0;
  }
  if (unbounded < 2)
  {
    throw std::invalid_argument("at least two agents need unbounded marginal value at 0");
  }
}

Allocation true_efficient_allocation(std::vector<ValuationSpec> const &valuations)
{
  std::vector<bool> const active(valuations.size(), true);
  return water_fill(active, [&valuations](std::size_t i, double a) { return valuations[i].marginal(a); });
}

BidProfile nash_bids(std::vector<ValuationSpec> const &valuations, SurrogateSpec const &spec)
{
  Allocation const a = true_efficient_allocation(valuations);
  std::vector<double> bids(valuations.size(), 0.0);
  for (std::size_t i = 0; i < valuations.size(); ++i)
  {
    if (a[i] <= 0.0)
    {
      continue;
    }
    Marginal const v = valuations[i].marginal(a[i]);
    Marginal const u = spec.u_prime(a[i]);
    if (v.is_infinite() || u.is_infinite())
    {
      throw std::domain_error("infinite marginal at a positive share");
    }
    bids[i] = v.value() / u.value();
  }
  return BidProfile(std::move(bids));
}

namespace {

struct Deviation
{
  double utility;
  double rebate;
};

Deviation evaluate_deviation(std::vector<ValuationSpec> const &valuations, SurrogateSpec const &spec,
                             BidProfile const &theta, std::size_t agent, RebateCoefficients const &c, double bid)
{
  MechanismOutcome const outcome = payments(spec, theta.with_bid(agent, bid), c);
  return {valuations[agent].value(outcome.allocation[agent]) - outcome.payments[agent], outcome.rebates[agent]};
}

}  // namespace

BestResponseReport verify_best_response(std::vector<ValuationSpec> const &valuations, SurrogateSpec const &spec,
                                        BidProfile const &theta, std::size_t agent,
                                        std::optional<RebateCoefficients> const &c,
                                        BestResponseOptions const &options)
{
  if (valuations.size() != theta.size())
  {
    throw std::invalid_argument("one valuation per bid is required");
  }
  if (agent >= theta.size())
  {
    throw std::out_of_range("agent index out of range");
  }
  if (options.grid_points < 2 || !(options.span > 1.0))
  {
    throw std::invalid_argument("best-response grid needs two points and a span above 1");
  }
  RebateCoefficients const coeffs = c.value_or(RebateCoefficients::zero(theta.size()));

  double centre = theta[agent];
  if (centre <= 0.0)
  {
    centre = 1.0;
    for (double b : theta.values())
    {
      centre = std::max(centre, b);
    }
  }

  // Index 0 is the zero bid; the rest is a multiplicative grid.
  std::vector<double> bids(options.grid_points + 1, 0.0);
  double const log_span = std::log(options.span);
  for (std::size_t k = 0; k < options.grid_points; ++k)
  {
    double const s = -1.0 + 2.0 * static_cast<double>(k) / static_cast<double>(options.grid_points - 1);
    bids[k + 1] = centre * std::exp(s * log_span);
  }

  std::vector<Deviation> scan(bids.size());
  parallel_for(bids.size(), [&](std::size_t k) {
    scan[k] = evaluate_deviation(valuations, spec, theta, agent, coeffs, bids[k]);
  });
  Deviation const truthful = evaluate_deviation(valuations, spec, theta, agent, coeffs, theta[agent]);

  BestResponseReport report;
  report.utility = truthful.utility;
  report.evaluated = scan.size() + 1;
  std::size_t best = 0;
  for (std::size_t k = 0; k < scan.size(); ++k)
  {
    report.rebate_constant = report.rebate_constant && scan[k].rebate == truthful.rebate;
    if (scan[k].utility > scan[best].utility)
    {
      best = k;
    }
  }
  double best_bid = bids[best];
  double best_utility = scan[best].utility;

  // Golden-section refinement on the neighbouring grid cells of the best point.
  if (best > 0)
  {
    double lo = best > 1 ? bids[best - 1] : bids[1];
    double hi = best + 1 < bids.size() ? bids[best + 1] : bids[best];
    double const phi = (std::sqrt(5.0) - 1.0) / 2.0;
    auto utility_at = [&](double b) {
      Deviation const d = evaluate_deviation(valuations, spec, theta, agent, coeffs, b);
      report.rebate_constant = report.rebate_constant && d.rebate == truthful.rebate;
      ++report.evaluated;
      return d.utility;
    };
    double x1 = hi - phi * (hi - lo);
    double x2 = lo + phi * (hi - lo);
    double f1 = utility_at(x1);
    double f2 = utility_at(x2);
    for (std::size_t it = 0; it < options.refine_iterations && hi - lo > 1e-14 * hi; ++it)
    {
      if (f1 < f2)
      {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + phi * (hi - lo);
        f2 = utility_at(x2);
      }
      else
      {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - phi * (hi - lo);
        f1 = utility_at(x1);
      }
    }
    for (auto [b, f] : {std::pair{x1, f1}, std::pair{x2, f2}})
    {
      if (f > best_utility)
      {
        best_utility = f;
        best_bid = b;
      }
    }
  }

  report.best_bid = best_bid;
  report.best_gain = std::max(0.0, best_utility - truthful.utility);
  report.is_best_response = report.best_gain <= options.tolerance;
  return report;
}

VpReport verify_equilibrium_vp(std::vector<ValuationSpec> const &valuations, SurrogateSpec const &spec,
                               RebateCoefficients const &c)
{
  VpReport report;
  report.theta = nash_bids(valuations, spec);
  report.outcome = payments(spec, report.theta, c);
  for (std::size_t i = 0; i < valuations.size(); ++i)
  {
    AgentVp agent;
    agent.utility = valuations[i].value(report.outcome.allocation[i]) - report.outcome.payments[i];
    agent.deficit = vp_deficit(spec, report.theta, i, [&](double a) { return valuations[i].value(a); });
    agent.rebate = report.outcome.rebates[i];
    agent.utility_ok = agent.utility >= -1e-9;
    agent.deficit_ok = agent.deficit <= 1e-9;
    agent.rebate_ok = agent.rebate >= -1e-12;
    report.passed = report.passed && agent.utility_ok && agent.deficit_ok && agent.rebate_ok;
    report.agents.push_back(agent);
  }
  return report;
}

}  // namespace ssvcg
