#include "ssvcg/allocation.hpp"

#include "ssvcg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ssvcg {

double Allocation::total() const noexcept
{
  return std::accumulate(shares.begin(), shares.end(), 0.0);
}

namespace {

/// Share solving marginal(i, a) = level on [0, 1] by bisection.
double invert_marginal(MarginalFn const &marginal, std::size_t i, double level, std::size_t max_iterations)
{
  Marginal const at_one = marginal(i, 1.0);
  if (!at_one.is_infinite() && at_one.value() >= level)
  {
    return 1.0;
  }
  if (!marginal(i, 0.0).exceeds(level))
  {
    return 0.0;
  }
  double lo = 0.0;
  double hi = 1.0;
  for (std::size_t it = 0; it < max_iterations; ++it)
  {
    double const mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
    {
      break;
    }
    if (marginal(i, mid).exceeds(level))
    {
      lo = mid;
    }
    else
    {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Allocation water_fill(std::vector<bool> const &active, MarginalFn const &marginal, WaterFillOptions const &options)
{
  std::size_t const n = active.size();
  Allocation out{std::vector<double>(n, 0.0)};

  std::vector<std::size_t> agents;
  for (std::size_t i = 0; i < n; ++i)
  {
    if (active[i])
    {
      agents.push_back(i);
    }
  }
  if (agents.empty())
  {
    return out;
  }
  if (agents.size() == 1)
  {
    out.shares[agents.front()] = 1.0;
    return out;
  }

  auto shares_at = [&](double level) {
    std::vector<double> a(n, 0.0);
    for (std::size_t i : agents)
    {
      a[i] = invert_marginal(marginal, i, level, options.max_iterations);
    }
    return a;
  };
  auto sum = [](std::vector<double> const &a) { return std::accumulate(a.begin(), a.end(), 0.0); };

  // The multiplier is at least every marginal-at-one, since no share exceeds 1.
  // Starting there keeps the top agent off the clip at a = 1, where a tiny
  // sum error would hide a large error in the level.
  double floor = 0.0;
  for (std::size_t i : agents)
  {
    Marginal const m = marginal(i, 1.0);
    if (m.is_infinite() || !std::isfinite(m.value()))
    {
      throw ConvergenceError("water-filling: marginal at a = 1 must be finite");
    }
    floor = std::max(floor, m.value());
  }

  // Bracket with sum(lo) >= 1 > sum(hi), growing or shrinking geometrically.
  double lo = floor > 0.0 ? floor : 1.0;
  double hi = lo;
  std::size_t steps = 0;
  auto step = [&] {
    if (++steps > options.max_iterations || !std::isfinite(hi) || !(lo > 0.0))
    {
      throw ConvergenceError("water-filling: could not bracket the multiplier");
    }
  };
  while (sum(shares_at(hi)) >= 1.0)
  {
    step();
    lo = hi;
    hi *= 2.0;
  }
  while (lo == hi || sum(shares_at(lo)) < 1.0)
  {
    step();
    hi = lo;
    lo *= 0.5;
  }

  std::vector<double> best = shares_at(hi);
  double best_gap = std::abs(sum(best) - 1.0);
  for (std::size_t it = 0; it < options.max_iterations && best_gap > options.tolerance; ++it)
  {
    double const mid = std::sqrt(lo) * std::sqrt(hi);
    if (!(mid > lo && mid < hi))
    {
      break;
    }
    std::vector<double> a = shares_at(mid);
    double const total = sum(a);
    if (std::abs(total - 1.0) < best_gap)
    {
      best_gap = std::abs(total - 1.0);
      best = a;
    }
    if (total > 1.0)
    {
      lo = mid;
    }
    else
    {
      hi = mid;
    }
  }
  if (best_gap > 1e-9)
  {
    throw ConvergenceError("water-filling: allocation sum did not converge to 1");
  }
  double const total = sum(best);
  for (double &a : best)
  {
    a /= total;
  }
  out.shares = std::move(best);
  return out;
}

Allocation efficient_allocation(SurrogateSpec const &spec, BidProfile const &theta)
{
  std::size_t const n = theta.size();
  Allocation out{std::vector<double>(n, 0.0)};
  if (theta.is_zero())
  {
    return out;
  }

  if (spec.is_power_law())
  {
    // a_i = theta_i^(1/alpha) / sum_j theta_j^(1/alpha), evaluated relative to
    // the largest bid so small alpha does not underflow.
    double const inv_alpha = 1.0 / spec.alpha();
    double const top = *std::max_element(theta.values().begin(), theta.values().end());
    double const log_top = std::log(top);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
      if (theta[i] > 0.0)
      {
        out.shares[i] = std::exp((std::log(theta[i]) - log_top) * inv_alpha);
        total += out.shares[i];
      }
    }
    for (double &a : out.shares)
    {
      a /= total;
    }
    return out;
  }

  std::vector<bool> active(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    active[i] = theta[i] > 0.0;
  }
  return water_fill(active, [&](std::size_t i, double a) {
    Marginal const m = spec.u_prime(a);
    return m.is_infinite() ? m : Marginal::finite(theta[i] * m.value());
  });
}

Allocation allocation_without_agent(SurrogateSpec const &spec, BidProfile const &theta, std::size_t agent)
{
  return efficient_allocation(spec, theta.without(agent));
}

}  // namespace ssvcg
