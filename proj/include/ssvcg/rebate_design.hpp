#pragma once

#include "ssvcg/bid_profile.hpp"
#include "ssvcg/lp.hpp"
#include "ssvcg/mechanism.hpp"
#include "ssvcg/surrogate.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ssvcg {

/// Weights of the total rebate on a descending profile: alpha_i for
/// i = 2 .. n, with alpha_i = i theta_{i+1} + (n - i) theta_i and alpha_n = 0.
/// Index k of the result holds alpha_{k+2}.
std::vector<double> alpha_coefficients(BidProfile const &ordered);

/// Cumulative rebate coefficients x_i = c_2 + ... + c_i and the objective t.
struct XVariables
{
  std::vector<double> x;
  double              t = 0.0;
};

XVariables c_to_x(RebateCoefficients const &c);
RebateCoefficients x_to_c(std::size_t agents, std::vector<double> const &x);

/// sum_i x_i (alpha_i - alpha_{i+1}) - p_S: feasibility, <= 0 when the
/// rebates never exceed the surplus.
double g1(SurrogateSpec const &spec, XVariables const &x, BidProfile const &ordered);
/// p_S - sum_i x_i (alpha_i - alpha_{i+1}) - t sigma_S: the worst-case ratio
/// is at most t on this profile when <= 0.
double g2(SurrogateSpec const &spec, XVariables const &x, BidProfile const &ordered);
double g(SurrogateSpec const &spec, XVariables const &x, BidProfile const &ordered);

struct ScpOptions
{
  /// Every sample contributes both an F row and a W row.
  bool combined_g = false;
};

/// min t over (x_2 .. x_{n-1}, t) subject to one F row per f-sample
/// (theta_1 = theta_2 = 1), one W row per w-sample (theta_1 = 1),
/// x >= 0 and 0 <= t <= 1.
lp::LinearProgram build_scp(SurrogateSpec const &spec, std::size_t n, std::span<BidProfile const> f_samples,
                            std::span<BidProfile const> w_samples, ScpOptions const &options = {});

struct SamplingConfig
{
  /// Random profiles; defaults to 5000 n.
  std::optional<std::size_t> random_samples;
  std::uint64_t              seed = 1;
  bool                       include_ek = true;
  /// Adds an epsilon-cover of both faces when set.
  std::optional<double>      cover_epsilon;
  std::size_t                cover_cap = 2'000'000;
  bool                       combined_g = false;
};

struct TrainingSet
{
  std::vector<BidProfile> f_samples;
  std::vector<BidProfile> w_samples;
};

TrainingSet assemble_samples(std::size_t n, SamplingConfig const &config);

struct LpStats
{
  std::size_t rows = 0;
  std::size_t vars = 0;
  std::size_t iterations = 0;
  lp::Route   route = lp::Route::primal;
  lp::Status  status = lp::Status::optimal;
};

struct RebateDesign
{
  RebateCoefficients c;
  XVariables         x;
  /// Optimal value of the sampled program.
  double             t = 0.0;
  LpStats            stats;
  std::size_t        f_rows = 0;
  std::size_t        w_rows = 0;
  /// p_S(e_n), the a priori bound on every x_i.
  double             bn = 0.0;
  /// max_i x_i <= bn + 1e-6; only meaningful when e_k profiles were sampled.
  bool               within_x_bound = true;
};

RebateDesign optimize_rebates(SurrogateSpec const &spec, std::size_t n, SamplingConfig const &config = {},
                              lp::Options const &solver = {});
RebateDesign optimize_rebates(SurrogateSpec const &spec, std::size_t n, TrainingSet const &samples,
                              bool combined_g = false, lp::Options const &solver = {});

}  // namespace ssvcg
