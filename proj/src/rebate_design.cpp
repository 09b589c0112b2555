#include "ssvcg/rebate_design.hpp"

#include "ssvcg/errors.hpp"
#include "ssvcg/parallel.hpp"
#include "ssvcg/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ssvcg {

std::vector<double> alpha_coefficients(BidProfile const &ordered)
{
  require_descending(ordered, "alpha coefficients");
  std::size_t const n = ordered.size();
  if (n < 2)
  {
    return {};
  }
  // 1-based i maps to ordered[i - 1].
  std::vector<double> alpha(n - 1, 0.0);
  for (std::size_t i = 2; i < n; ++i)
  {
    alpha[i - 2] = static_cast<double>(i) * ordered[i] + static_cast<double>(n - i) * ordered[i - 1];
  }
  return alpha;
}

namespace {

/// alpha_i - alpha_{i+1} for i = 2 .. n-1: the coefficient of x_i.
std::vector<double> x_weights(BidProfile const &ordered)
{
  std::vector<double> const alpha = alpha_coefficients(ordered);
  std::vector<double> weights(alpha.empty() ? 0 : alpha.size() - 1);
  for (std::size_t k = 0; k < weights.size(); ++k)
  {
    weights[k] = alpha[k] - alpha[k + 1];
  }
  return weights;
}

double rebate_mass(XVariables const &x, BidProfile const &ordered)
{
  std::vector<double> const weights = x_weights(ordered);
  if (weights.size() != x.x.size())
  {
    throw std::invalid_argument("x has " + std::to_string(x.x.size()) + " entries, profile needs " +
                                std::to_string(weights.size()));
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k)
  {
    sum += x.x[k] * weights[k];
  }
  return sum;
}

void require_face(BidProfile const &theta, std::size_t n, std::size_t leading_ones, char const *what)
{
  if (theta.size() != n)
  {
    throw SampleError(std::string(what) + ": sample has " + std::to_string(theta.size()) + " agents, expected " +
                      std::to_string(n));
  }
  if (!theta.is_descending())
  {
    throw SampleError(std::string(what) + ": sample is not descending");
  }
  for (std::size_t i = 0; i < std::min(leading_ones, n); ++i)
  {
    if (theta[i] != 1.0)
    {
      throw SampleError(std::string(what) + ": sample must start with " + std::to_string(leading_ones) + " ones");
    }
  }
}

}  // namespace

XVariables c_to_x(RebateCoefficients const &c)
{
  return XVariables{c.partial_sums(), 0.0};
}

RebateCoefficients x_to_c(std::size_t agents, std::vector<double> const &x)
{
  std::vector<double> c(x.size());
  for (std::size_t k = 0; k < x.size(); ++k)
  {
    c[k] = k == 0 ? x[0] : x[k] - x[k - 1];
  }
  return RebateCoefficients(agents, std::move(c));
}

double g1(SurrogateSpec const &spec, XVariables const &x, BidProfile const &ordered)
{
  return rebate_mass(x, ordered) - clarke_surplus(spec, ordered);
}

double g2(SurrogateSpec const &spec, XVariables const &x, BidProfile const &ordered)
{
  SurplusWelfare const sw = surplus_and_welfare(spec, ordered);
  return -rebate_mass(x, ordered) + sw.surplus - x.t * sw.welfare;
}

double g(SurrogateSpec const &spec, XVariables const &x, BidProfile const &ordered)
{
  SurplusWelfare const sw = surplus_and_welfare(spec, ordered);
  double const mass = rebate_mass(x, ordered);
  return std::max(mass - sw.surplus, -mass + sw.surplus - x.t * sw.welfare);
}

lp::LinearProgram build_scp(SurrogateSpec const &spec, std::size_t n, std::span<BidProfile const> f_samples,
                            std::span<BidProfile const> w_samples, ScpOptions const &options)
{
  if (n < 2)
  {
    throw std::invalid_argument("the sampled program needs at least two agents");
  }
  if (w_samples.empty())
  {
    throw SampleError("the sampled program needs at least one welfare sample");
  }
  for (BidProfile const &theta : f_samples)
  {
    require_face(theta, n, 2, "feasibility sample");
  }
  for (BidProfile const &theta : w_samples)
  {
    require_face(theta, n, 1, "welfare sample");
  }

  std::size_t const xs = n - 2;
  std::size_t const vars = xs + 1;

  lp::LinearProgram program;
  program.num_vars = vars;
  program.objective.assign(vars, 0.0);
  program.objective[xs] = 1.0;
  program.lower_bounds.assign(vars, 0.0);
  program.upper_bounds.assign(vars, lp::infinity);
  program.upper_bounds[xs] = 1.0;

  // With no rebate variables the F rows read -p_S <= 0 and carry nothing.
  bool const want_f = xs > 0;
  std::vector<BidProfile const *> f_sources;
  if (want_f)
  {
    for (BidProfile const &theta : f_samples)
    {
      f_sources.push_back(&theta);
    }
    if (options.combined_g)
    {
      for (BidProfile const &theta : w_samples)
      {
        f_sources.push_back(&theta);
      }
    }
  }

  std::size_t const f_count = f_sources.size();
  program.rows.resize(f_count + w_samples.size());
  parallel_for(program.rows.size(), [&](std::size_t r) {
    bool const is_f = r < f_count;
    BidProfile const &theta = is_f ? *f_sources[r] : w_samples[r - f_count];
    std::vector<double> const weights = x_weights(theta);
    SurplusWelfare const sw = surplus_and_welfare(spec, theta);
    lp::Row &row = program.rows[r];
    row.coeffs.assign(vars, 0.0);
    std::copy(weights.begin(), weights.end(), row.coeffs.begin());
    row.rhs = sw.surplus;
    if (is_f)
    {
      row.sense = lp::Sense::less_equal;
    }
    else
    {
      row.coeffs[xs] = sw.welfare;
      row.sense = lp::Sense::greater_equal;
    }
  });
  return program;
}

TrainingSet assemble_samples(std::size_t n, SamplingConfig const &config)
{
  if (n < 2)
  {
    throw std::invalid_argument("sampling needs at least two agents");
  }
  TrainingSet set;
  if (config.include_ek)
  {
    std::vector<BidProfile> ek = ek_profiles(n);
    set.f_samples.assign(ek.begin() + 1, ek.end());
    set.w_samples = std::move(ek);
  }

  std::size_t const count = config.random_samples.value_or(5000 * n);
  if (count > 0)
  {
    std::vector<BidProfile> random = random_ordered_samples(n, count, config.seed);
    for (BidProfile const &theta : random)
    {
      set.f_samples.push_back(theta.with_bid(1, 1.0));
    }
    set.w_samples.insert(set.w_samples.end(), random.begin(), random.end());
  }

  if (config.cover_epsilon)
  {
    for (Face face : {Face::f_face, Face::w_face})
    {
      std::vector<BidProfile> cover = epsilon_cover({n, *config.cover_epsilon, face, config.cover_cap});
      auto &target = face == Face::f_face ? set.f_samples : set.w_samples;
      target.insert(target.end(), cover.begin(), cover.end());
    }
  }
  return set;
}

RebateDesign optimize_rebates(SurrogateSpec const &spec, std::size_t n, TrainingSet const &samples,
                              bool combined_g, lp::Options const &solver)
{
  lp::LinearProgram const program = build_scp(spec, n, samples.f_samples, samples.w_samples, {combined_g});
  lp::Result const result = lp::solve(program, solver);
  if (result.status != lp::Status::optimal)
  {
    // x = 0, t = 1 is always feasible and t is bounded, so this is a solver fault.
    throw NumericalInstability("sampled program reported " + lp::to_string(result.status));
  }

  RebateDesign design;
  std::size_t const xs = n - 2;
  design.x.x.assign(result.x.begin(), result.x.begin() + static_cast<std::ptrdiff_t>(xs));
  for (double &v : design.x.x)
  {
    v = std::max(v, 0.0);
  }
  design.x.t = result.x[xs];
  design.t = result.value;
  design.c = x_to_c(n, design.x.x);
  design.stats = {program.rows.size(), program.num_vars, result.iterations, result.route, result.status};
  for (lp::Row const &row : program.rows)
  {
    (row.sense == lp::Sense::less_equal ? design.f_rows : design.w_rows) += 1;
  }
  design.bn = clarke_surplus(spec, ek_profiles(n).back());
  for (double v : design.x.x)
  {
    design.within_x_bound = design.within_x_bound && v <= design.bn + 1e-6;
  }
  return design;
}

RebateDesign optimize_rebates(SurrogateSpec const &spec, std::size_t n, SamplingConfig const &config,
                              lp::Options const &solver)
{
  return optimize_rebates(spec, n, assemble_samples(n, config), config.combined_g, solver);
}

}  // namespace ssvcg
