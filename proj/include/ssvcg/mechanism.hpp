#pragma once

#include "ssvcg/allocation.hpp"
#include "ssvcg/bid_profile.hpp"
#include "ssvcg/surrogate.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace ssvcg {

/// Linear rebate coefficients on the order statistics of the other agents'
/// bids. The constant and top-bid coefficients are pinned to zero, so only
/// c_2 .. c_{n-1} are stored.
class RebateCoefficients
{
public:
  RebateCoefficients() = default;
  /// `free` holds c_2 .. c_{n-1}; its size must be max(n - 2, 0).
  RebateCoefficients(std::size_t agents, std::vector<double> free);

  static RebateCoefficients zero(std::size_t agents);

  std::size_t agents() const noexcept { return agents_; }
  std::vector<double> const &free() const noexcept { return c_; }

  /// Coefficient of the k-th largest of the others' bids (k in 0..n-1, with
  /// c_0 the constant term). Zero for k < 2.
  double coefficient(std::size_t k) const;

  /// sum_{i=2}^{k} c_i for k = 2 .. n-1.
  std::vector<double> partial_sums() const;
  /// Voluntary participation holds iff every partial sum is nonnegative.
  bool satisfies_participation(double tolerance = 1e-12) const;

private:
  std::size_t         agents_ = 0;
  std::vector<double> c_;
};

struct MechanismOutcome
{
  BidProfile          theta;
  Allocation          allocation;
  std::vector<double> payments;
  std::vector<double> rebates;
  double              surplus_ps = 0.0;
  double              welfare_sigma = 0.0;
};

struct SurplusWelfare
{
  double surplus;  ///< Clarke pivotal surplus p_S
  double welfare;  ///< surrogate welfare sigma_S
};

/// sum_i theta_i U(a_i) for a given allocation.
double welfare_of(SurrogateSpec const &spec, BidProfile const &theta, Allocation const &allocation);

/// Surrogate welfare at the efficient allocation; 0 for the zero profile.
double surrogate_welfare(SurrogateSpec const &spec, BidProfile const &theta);

/// p_S = sum_i sigma_{S,-i} - (n - 1) sigma_S.
double clarke_surplus(SurrogateSpec const &spec, BidProfile const &theta);

/// Both quantities from one set of allocations.
SurplusWelfare surplus_and_welfare(SurrogateSpec const &spec, BidProfile const &theta);

/// Rebate of the agent at rank `rank` (0-based) of a descending profile:
/// the coefficients applied to the order statistics of everyone else's bids.
double rebate(RebateCoefficients const &c, BidProfile const &ordered, std::size_t rank);

/// Sum of rebates over all agents of a descending profile.
double total_rebate(RebateCoefficients const &c, BidProfile const &ordered);

/// Full outcome for a possibly unsorted profile. Rebates are computed on the
/// stably sorted profile and mapped back to agent positions.
MechanismOutcome payments(SurrogateSpec const &spec, BidProfile const &theta, RebateCoefficients const &c);

/// Negative Clarke utility of `agent` under true valuation v:
/// q_i = -v(a_i) - sum_{j != i} theta_j U(a_j) + sigma_{S,-i}.
double vp_deficit(SurrogateSpec const &spec, BidProfile const &theta, std::size_t agent,
                  std::function<double(double)> const &valuation);

struct WorstCase
{
  double      value = 0.0;
  BidProfile  argmax;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;  ///< zero-welfare profiles
};

/// max over samples of (p_S - sum_i r_i) / sigma_S. Samples must be descending.
/// Zero-welfare samples are skipped; throws SampleError if none remain.
WorstCase worst_case_ratio(SurrogateSpec const &spec, RebateCoefficients const &c,
                           std::span<BidProfile const> samples);

}  // namespace ssvcg
