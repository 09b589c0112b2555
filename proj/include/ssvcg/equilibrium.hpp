#pragma once

#include "ssvcg/allocation.hpp"
#include "ssvcg/bid_profile.hpp"
#include "ssvcg/mechanism.hpp"
#include "ssvcg/surrogate.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

namespace ssvcg {

struct PowerValuation
{
  double w;     ///< v(a) = w a^(1 - beta)
  double beta;
};

struct CustomValuation
{
  std::function<double(double)> v;
  std::function<double(double)> v_prime;
};

/// An agent's true valuation of a share of the good.
class ValuationSpec
{
public:
  static ValuationSpec power(double w, double beta);
  static ValuationSpec custom(std::function<double(double)> v, std::function<double(double)> v_prime);

  bool is_power() const noexcept { return std::holds_alternative<PowerValuation>(kind_); }
  std::variant<PowerValuation, CustomValuation> const &kind() const noexcept { return kind_; }

  double value(double a) const;
  /// Infinite at 0 for power valuations and for custom derivatives that blow up there.
  Marginal marginal(double a) const;

private:
  explicit ValuationSpec(std::variant<PowerValuation, CustomValuation> kind)
    : kind_(std::move(kind))
  {}

  std::variant<PowerValuation, CustomValuation> kind_;
};

/// Grid audit of every valuation plus the requirement that at least two
/// agents have unbounded marginal value at 0. Throws std::invalid_argument.
void validate_valuations(std::vector<ValuationSpec> const &valuations, std::size_t grid_size = 101);

/// Maximizer of sum_i v_i(a_i) over the simplex.
Allocation true_efficient_allocation(std::vector<ValuationSpec> const &valuations);

/// Bids that make the surrogate allocation reproduce the true efficient one:
/// theta_i = v_i'(a_i) / U'(a_i). Agents with a zero share bid 0.
BidProfile nash_bids(std::vector<ValuationSpec> const &valuations, SurrogateSpec const &spec);

struct BestResponseOptions
{
  std::size_t grid_points = 200;
  double      span = 50.0;        ///< scan [theta_i / span, span theta_i] and 0
  double      tolerance = 1e-6;
  std::size_t refine_iterations = 80;
};

struct BestResponseReport
{
  bool   is_best_response = false;
  double best_gain = 0.0;       ///< best utility minus utility at theta_i
  double best_bid = 0.0;
  double utility = 0.0;         ///< at theta_i
  bool   rebate_constant = true;  ///< own rebate identical across all deviations
  std::size_t evaluated = 0;
};

/// Scans deviations of agent `agent` and reports the best improvement in
/// quasi-linear utility v_i(a_i) - p_i over bidding theta_i.
BestResponseReport verify_best_response(std::vector<ValuationSpec> const &valuations, SurrogateSpec const &spec,
                                        BidProfile const &theta, std::size_t agent,
                                        std::optional<RebateCoefficients> const &c = std::nullopt,
                                        BestResponseOptions const &options = {});

struct AgentVp
{
  double utility = 0.0;  ///< v_i(a_i) - p_i
  double deficit = 0.0;  ///< q_i
  double rebate = 0.0;
  bool   utility_ok = true;
  bool   deficit_ok = true;
  bool   rebate_ok = true;
};

struct VpReport
{
  BidProfile           theta;
  MechanismOutcome     outcome;
  std::vector<AgentVp> agents;
  bool                 passed = true;
};

/// Voluntary participation at the Nash bids: utility >= -1e-9, q_i <= 1e-9
/// and r_i >= -1e-12 for every agent.
VpReport verify_equilibrium_vp(std::vector<ValuationSpec> const &valuations, SurrogateSpec const &spec,
                               RebateCoefficients const &c);

}  // namespace ssvcg
