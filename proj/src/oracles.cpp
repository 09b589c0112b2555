#include "ssvcg/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace ssvcg {

namespace {

void require_alpha(double alpha)
{
  if (!(alpha > 0.0 && alpha < 1.0))
  {
    throw std::domain_error("alpha must lie in (0, 1)");
  }
}

/// exp(alpha * logsumexp(log(theta_i) / alpha)) over positive entries, skipping `skip`.
double norm(std::span<double const> theta, double alpha, std::size_t skip)
{
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < theta.size(); ++i)
  {
    if (i != skip && theta[i] > 0.0)
    {
      top = std::max(top, std::log(theta[i]) / alpha);
    }
  }
  if (!std::isfinite(top))
  {
    return 0.0;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i)
  {
    if (i != skip && theta[i] > 0.0)
    {
      sum += std::exp(std::log(theta[i]) / alpha - top);
    }
  }
  return std::exp(alpha * (top + std::log(sum)));
}

}  // namespace

double sigma_closed(BidProfile const &theta, double alpha)
{
  require_alpha(alpha);
  return norm(theta.values(), alpha, theta.size());
}

double ps_closed(BidProfile const &theta, double alpha)
{
  require_alpha(alpha);
  std::size_t const n = theta.size();
  if (n < 2)
  {
    return 0.0;
  }
  double leave_one_out = 0.0;
  for (std::size_t j = 0; j < n; ++j)
  {
    leave_one_out += norm(theta.values(), alpha, j);
  }
  return leave_one_out - static_cast<double>(n - 1) * norm(theta.values(), alpha, n);
}

double ssvcg_worst_ratio_closed(std::size_t n, double alpha)
{
  require_alpha(alpha);
  if (n < 2)
  {
    throw std::domain_error("the worst-case ratio needs at least two agents");
  }
  double const nn = static_cast<double>(n);
  return nn * std::pow(1.0 - 1.0 / nn, alpha) - (nn - 1.0);
}

double mu_ne_closed(double vprime_at_1_over_n, std::size_t n, double alpha)
{
  require_alpha(alpha);
  if (n < 2)
  {
    throw std::domain_error("the symmetric equilibrium needs at least two agents");
  }
  if (!(vprime_at_1_over_n > 0.0))
  {
    throw std::domain_error("marginal valuation must be positive");
  }
  double const nn = static_cast<double>(n);
  return vprime_at_1_over_n / ((1.0 - alpha) * std::pow(nn, alpha));
}

}  // namespace ssvcg
