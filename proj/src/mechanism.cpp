#include "ssvcg/mechanism.hpp"

#include "ssvcg/errors.hpp"
#include "ssvcg/parallel.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>
#include <string>

namespace ssvcg {

RebateCoefficients::RebateCoefficients(std::size_t agents, std::vector<double> free)
  : agents_(agents)
  , c_(std::move(free))
{
  std::size_t const expected = agents >= 2 ? agents - 2 : 0;
  if (c_.size() != expected)
  {
    throw std::invalid_argument("expected " + std::to_string(expected) + " rebate coefficients for " +
                                std::to_string(agents) + " agents, got " + std::to_string(c_.size()));
  }
  for (double v : c_)
  {
    if (!std::isfinite(v))
    {
      throw std::domain_error("rebate coefficients must be finite");
    }
  }
}

RebateCoefficients RebateCoefficients::zero(std::size_t agents)
{
  return RebateCoefficients(agents, std::vector<double>(agents >= 2 ? agents - 2 : 0, 0.0));
}

double RebateCoefficients::coefficient(std::size_t k) const
{
  if (k >= agents_)
  {
    throw std::out_of_range("rebate coefficient index out of range");
  }
  return k < 2 ? 0.0 : c_[k - 2];
}

std::vector<double> RebateCoefficients::partial_sums() const
{
  std::vector<double> sums(c_.size());
  double running = 0.0;
  for (std::size_t i = 0; i < c_.size(); ++i)
  {
    running += c_[i];
    sums[i] = running;
  }
  return sums;
}

bool RebateCoefficients::satisfies_participation(double tolerance) const
{
  for (double s : partial_sums())
  {
    if (s < -tolerance)
    {
      return false;
    }
  }
  return true;
}

double welfare_of(SurrogateSpec const &spec, BidProfile const &theta, Allocation const &allocation)
{
  double sum = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i)
  {
    if (theta[i] > 0.0)
    {
      sum += theta[i] * spec.u(allocation[i]);
    }
  }
  return sum;
}

double surrogate_welfare(SurrogateSpec const &spec, BidProfile const &theta)
{
  return welfare_of(spec, theta, efficient_allocation(spec, theta));
}

SurplusWelfare surplus_and_welfare(SurrogateSpec const &spec, BidProfile const &theta)
{
  std::size_t const n = theta.size();
  double const welfare = surrogate_welfare(spec, theta);
  if (n < 2 || welfare == 0.0)
  {
    return {0.0, welfare};
  }
  double leave_one_out = 0.0;
  for (std::size_t i = 0; i < n; ++i)
  {
    // Removing a zero bidder leaves the welfare unchanged.
    leave_one_out += theta[i] == 0.0 ? welfare : surrogate_welfare(spec, theta.without(i));
  }
  return {leave_one_out - static_cast<double>(n - 1) * welfare, welfare};
}

double clarke_surplus(SurrogateSpec const &spec, BidProfile const &theta)
{
  return surplus_and_welfare(spec, theta).surplus;
}

double rebate(RebateCoefficients const &c, BidProfile const &ordered, std::size_t rank)
{
  std::size_t const n = ordered.size();
  if (rank >= n)
  {
    throw std::out_of_range("rebate: agent rank out of range");
  }
  if (c.agents() != n)
  {
    throw std::invalid_argument("rebate: coefficient count does not match the profile");
  }
  require_descending(ordered, "rebate");
  // The k-th largest of the others' bids (1-based k) is b_k for k < rank + 1
  // and b_{k+1} otherwise, in 1-based profile positions.
  double r = 0.0;
  for (std::size_t k = 2; k < n; ++k)
  {
    std::size_t const position = (k - 1 < rank) ? k - 1 : k;
    r += c.coefficient(k) * ordered[position];
  }
  return r;
}

double total_rebate(RebateCoefficients const &c, BidProfile const &ordered)
{
  double sum = 0.0;
  for (std::size_t i = 0; i < ordered.size(); ++i)
  {
    sum += rebate(c, ordered, i);
  }
  return sum;
}

MechanismOutcome payments(SurrogateSpec const &spec, BidProfile const &theta, RebateCoefficients const &c)
{
  std::size_t const n = theta.size();
  MechanismOutcome out;
  out.theta = theta;
  out.allocation = efficient_allocation(spec, theta);
  out.welfare_sigma = welfare_of(spec, theta, out.allocation);
  out.payments.assign(n, 0.0);
  out.rebates.assign(n, 0.0);

  std::vector<std::size_t> const order = theta.descending_order();
  BidProfile const ordered = theta.sorted_descending();
  for (std::size_t rank = 0; rank < n; ++rank)
  {
    out.rebates[order[rank]] = rebate(c, ordered, rank);
  }

  double surplus = 0.0;
  for (std::size_t i = 0; i < n; ++i)
  {
    double const own = theta[i] > 0.0 ? theta[i] * spec.u(out.allocation[i]) : 0.0;
    double const others_with = out.welfare_sigma - own;
    double const others_without = theta[i] == 0.0 ? out.welfare_sigma : surrogate_welfare(spec, theta.without(i));
    double const clarke = others_without - others_with;
    surplus += clarke;
    out.payments[i] = clarke - out.rebates[i];
  }
  out.surplus_ps = surplus;
  return out;
}

double vp_deficit(SurrogateSpec const &spec, BidProfile const &theta, std::size_t agent,
                  std::function<double(double)> const &valuation)
{
  if (agent >= theta.size())
  {
    throw std::out_of_range("vp_deficit: agent index out of range");
  }
  Allocation const a = efficient_allocation(spec, theta);
  double const welfare = welfare_of(spec, theta, a);
  double const own = theta[agent] > 0.0 ? theta[agent] * spec.u(a[agent]) : 0.0;
  double const others_without = theta[agent] == 0.0 ? welfare : surrogate_welfare(spec, theta.without(agent));
  return -valuation(a[agent]) - (welfare - own) + others_without;
}

WorstCase worst_case_ratio(SurrogateSpec const &spec, RebateCoefficients const &c, std::span<BidProfile const> samples)
{
  if (samples.empty())
  {
    throw SampleError("worst_case_ratio: no samples");
  }
  std::vector<double> ratios(samples.size());
  std::vector<char> usable(samples.size(), 0);
  parallel_for(samples.size(), [&](std::size_t s) {
    BidProfile const &theta = samples[s];
    require_descending(theta, "worst_case_ratio");
    SurplusWelfare const sw = surplus_and_welfare(spec, theta);
    if (sw.welfare > 0.0)
    {
      ratios[s] = (sw.surplus - total_rebate(c, theta)) / sw.welfare;
      usable[s] = 1;
    }
  });

  WorstCase out;
  bool found = false;
  for (std::size_t s = 0; s < samples.size(); ++s)
  {
    if (!usable[s])
    {
      ++out.skipped;
      continue;
    }
    ++out.evaluated;
    if (!found || ratios[s] > out.value)
    {
      out.value = ratios[s];
      out.argmax = samples[s];
      found = true;
    }
  }
  if (!found)
  {
    throw SampleError("worst_case_ratio: every sample has zero surrogate welfare");
  }
  if (out.skipped > 0)
  {
    std::clog << "worst_case_ratio: skipped " << out.skipped << " zero-welfare profile(s)\n";
  }
  return out;
}

}  // namespace ssvcg
