#pragma once

#include "ssvcg/bid_profile.hpp"
#include "ssvcg/surrogate.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace ssvcg {

/// Fractions of the unit good, indexed like the profile that produced them.
struct Allocation
{
  std::vector<double> shares;

  std::size_t size() const noexcept { return shares.size(); }
  double operator[](std::size_t i) const { return shares[i]; }
  double total() const noexcept;
};

/// Marginal value of agent `i` at share `a`; must be strictly decreasing in a.
using MarginalFn = std::function<Marginal(std::size_t i, double a)>;

struct WaterFillOptions
{
  double      tolerance = 1e-12;  ///< on |sum(a) - 1|
  std::size_t max_iterations = 200;
};

/// KKT water-filling for max sum_i V_i(a_i) s.t. sum a_i <= 1, a_i >= 0 over the
/// agents flagged in `active`. Finds the multiplier lambda with
/// sum_i a_i(lambda) = 1 where V_i'(a_i(lambda)) = lambda, by bisection.
/// Inactive agents receive 0. Throws ConvergenceError if lambda cannot be
/// bracketed or the sum misses 1 by more than 1e-9 after the iteration cap.
Allocation water_fill(std::vector<bool> const &active, MarginalFn const &marginal,
                      WaterFillOptions const &options = {});

/// Surrogate social planner's allocation. Closed form for power laws,
/// water-filling for custom U. The zero profile gets the zero allocation.
Allocation efficient_allocation(SurrogateSpec const &spec, BidProfile const &theta);

/// Efficient allocation over the n - 1 agents other than `agent`.
Allocation allocation_without_agent(SurrogateSpec const &spec, BidProfile const &theta,
                                    std::size_t agent);

}  // namespace ssvcg
