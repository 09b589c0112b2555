#include "ssvcg/surrogate.hpp"

#include <cmath>
#include <stdexcept>

namespace ssvcg {

SurrogateSpec::SurrogateSpec(std::variant<PowerLaw, CustomUtility> kind)
  : kind_(std::move(kind))
{}

SurrogateSpec SurrogateSpec::power_law(double alpha)
{
  if (!(alpha > 0.0 && alpha < 1.0))
  {
    throw std::domain_error("power-law alpha must lie in (0, 1)");
  }
  return SurrogateSpec(PowerLaw{alpha});
}

SurrogateSpec SurrogateSpec::custom(std::function<double(double)> u, std::function<double(double)> u_prime)
{
  if (!u || !u_prime)
  {
    throw std::invalid_argument("custom surrogate needs both U and U'");
  }
  SurrogateSpec spec(CustomUtility{std::move(u), std::move(u_prime)});
  spec.u_at_one_ = std::get<CustomUtility>(spec.kind_).u(1.0);
  return spec;
}

double SurrogateSpec::alpha() const
{
  if (auto const *p = std::get_if<PowerLaw>(&kind_))
  {
    return p->alpha;
  }
  throw std::logic_error("alpha is only defined for power-law surrogates");
}

double SurrogateSpec::u(double a) const
{
  if (!(a >= 0.0 && a <= 1.0))
  {
    throw std::domain_error("U is defined on [0, 1]");
  }
  if (auto const *p = std::get_if<PowerLaw>(&kind_))
  {
    return a == 0.0 ? 0.0 : std::pow(a, 1.0 - p->alpha);
  }
  return std::get<CustomUtility>(kind_).u(a);
}

Marginal SurrogateSpec::u_prime(double a) const
{
  if (!(a >= 0.0 && a <= 1.0))
  {
    throw std::domain_error("U' is defined on [0, 1]");
  }
  if (a == 0.0)
  {
    return Marginal::infinite();
  }
  if (auto const *p = std::get_if<PowerLaw>(&kind_))
  {
    return Marginal::finite((1.0 - p->alpha) * std::pow(a, -p->alpha));
  }
  return Marginal::finite(std::get<CustomUtility>(kind_).u_prime(a));
}

AssumptionReport check_assumptions(SurrogateSpec const &spec, std::size_t grid_size)
{
  if (grid_size < 3)
  {
    throw std::invalid_argument("assumption audit needs at least 3 grid points");
  }
  AssumptionReport report;
  auto flag = [&report](ViolationKind kind, std::size_t index, double a) {
    report.passed = false;
    report.violations.push_back({kind, index, a});
  };

  std::vector<double> grid(grid_size);
  std::vector<double> values(grid_size);
  for (std::size_t k = 0; k < grid_size; ++k)
  {
    grid[k] = static_cast<double>(k) / static_cast<double>(grid_size - 1);
    values[k] = spec.u(grid[k]);
    if (!std::isfinite(values[k]))
    {
      flag(ViolationKind::non_finite, k, grid[k]);
    }
  }
  if (values[0] != 0.0)
  {
    flag(ViolationKind::nonzero_at_origin, 0, 0.0);
  }
  for (std::size_t k = 1; k < grid_size; ++k)
  {
    if (!(values[k] - values[k - 1] > 0.0))
    {
      flag(ViolationKind::not_increasing, k, grid[k]);
    }
  }
  for (std::size_t k = 1; k + 1 < grid_size; ++k)
  {
    double const second = values[k + 1] - 2.0 * values[k] + values[k - 1];
    if (!(second < 0.0))
    {
      flag(ViolationKind::not_concave, k, grid[k]);
    }
  }
  return report;
}

std::string to_string(ViolationKind kind)
{
  switch (kind)
  {
  case ViolationKind::nonzero_at_origin:
    return "nonzero_at_origin";
  case ViolationKind::not_increasing:
    return "not_increasing";
  case ViolationKind::not_concave:
    return "not_concave";
  case ViolationKind::non_finite:
    return "non_finite";
  }
  return "unknown";
}

}  // namespace ssvcg
