#include "ssvcg/properties.hpp"

#include "ssvcg/allocation.hpp"
#include "ssvcg/mechanism.hpp"
#include "ssvcg/oracles.hpp"
#include "ssvcg/rebate_design.hpp"
#include "ssvcg/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <stdexcept>

namespace ssvcg {

namespace {

constexpr double alphas[] = {0.01, 0.25, 0.5, 0.75, 0.99};

class Gen
{
public:
  explicit Gen(std::uint64_t seed)
    : rng_(seed)
  {}

  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::size_t integer(std::size_t lo, std::size_t hi)
  {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  double alpha() { return alphas[integer(0, std::size(alphas) - 1)]; }

  /// Bids in [0, 1] with an occasional exact zero.
  BidProfile profile(std::size_t n)
  {
    std::vector<double> bids(n);
    for (double &b : bids)
    {
      b = integer(0, 9) == 0 ? 0.0 : uniform();
    }
    return BidProfile(std::move(bids));
  }

  BidProfile ordered(std::size_t n) { return profile(n).sorted_descending(); }

private:
  std::mt19937_64 rng_;
};

class Recorder
{
public:
  explicit Recorder(std::string name) { result_.name = std::move(name); }

  /// Records one trial whose property reads `excess <= 0`.
  void expect_at_most(double excess)
  {
    ++result_.trials;
    if (!(excess <= 0.0))
    {
      ++result_.failures;
      result_.worst = std::max(result_.worst, std::isnan(excess) ? INFINITY : excess);
    }
  }
  void expect(bool ok) { expect_at_most(ok ? 0.0 : 1.0); }

  PropertyResult result() const { return result_; }

private:
  PropertyResult result_;
};

/// x-space weights alpha_i - alpha_{i+1}, with an optional corrupted alpha_n.
std::vector<double> weights(BidProfile const &ordered, bool corrupt_alpha_n)
{
  std::vector<double> alpha = alpha_coefficients(ordered);
  if (corrupt_alpha_n && !alpha.empty())
  {
    alpha.back() = 1.0;
  }
  std::vector<double> w(alpha.empty() ? 0 : alpha.size() - 1);
  for (std::size_t k = 0; k < w.size(); ++k)
  {
    w[k] = alpha[k] - alpha[k + 1];
  }
  return w;
}

}  // namespace

std::vector<PropertyResult> run_property_suite(CheckOptions const &options)
{
  if (!options.fault.empty() && options.fault != "alpha_n" && options.fault != "lp_witness")
  {
    throw std::invalid_argument("unknown fault '" + options.fault + "'");
  }
  std::vector<PropertyResult> results;
  std::size_t const trials = std::max<std::size_t>(options.trials, 1);
  Gen gen(options.seed);

  {
    Recorder oracle("oracle_agreement");
    Recorder dominance("welfare_dominates_surplus");
    Recorder balance("payments_sum_to_surplus");
    for (std::size_t s = 0; s < trials; ++s)
    {
      std::size_t const n = gen.integer(2, 10);
      double const alpha = gen.alpha();
      SurrogateSpec const spec = SurrogateSpec::power_law(alpha);
      BidProfile const theta = gen.profile(n);
      SurplusWelfare const sw = surplus_and_welfare(spec, theta);
      oracle.expect_at_most(std::abs(sw.welfare - sigma_closed(theta, alpha)) - 1e-8);
      oracle.expect_at_most(std::abs(sw.surplus - ps_closed(theta, alpha)) - 1e-8);
      dominance.expect_at_most(sw.surplus - sw.welfare - 1e-12);
      dominance.expect_at_most(-sw.surplus - 1e-12);
      MechanismOutcome const outcome = payments(spec, theta, RebateCoefficients::zero(n));
      double total = 0.0;
      for (double p : outcome.payments)
      {
        total += p;
      }
      balance.expect_at_most(std::abs(total - sw.surplus) - 1e-9);
    }
    results.push_back(oracle.result());
    results.push_back(dominance.result());
    results.push_back(balance.result());
  }

  {
    Recorder identity("rebate_sum_identity");
    Recorder steps("alpha_differences_nonnegative");
    for (std::size_t s = 0; s < trials; ++s)
    {
      std::size_t const n = gen.integer(3, 10);
      BidProfile const theta = gen.ordered(n);
      std::vector<double> x(n - 2);
      for (double &v : x)
      {
        v = gen.uniform(0.0, 0.5);
      }
      std::vector<double> const w = weights(theta, options.fault == "alpha_n");
      double via_x = 0.0;
      for (std::size_t k = 0; k < w.size(); ++k)
      {
        via_x += x[k] * w[k];
        steps.expect_at_most(-w[k] - 1e-12);
      }
      double const direct = total_rebate(x_to_c(n, x), theta);
      identity.expect_at_most(std::abs(via_x - direct) - 1e-12 * std::max(1.0, std::abs(direct)));
    }
    results.push_back(identity.result());
    results.push_back(steps.result());
  }

  {
    Recorder monotone("surplus_monotone_in_each_bid");
    Recorder scaling("surplus_over_scale_decreasing");
    Recorder homogeneous("welfare_homogeneous");
    Recorder lipschitz("lipschitz_bounds");
    for (std::size_t s = 0; s < trials; ++s)
    {
      std::size_t const n = gen.integer(2, 8);
      SurrogateSpec const spec = SurrogateSpec::power_law(gen.alpha());
      BidProfile const theta = gen.profile(n);
      double const ps = clarke_surplus(spec, theta);

      std::size_t const i = gen.integer(0, n - 1);
      BidProfile const raised = theta.with_bid(i, theta[i] + gen.uniform(1e-3, 1.0));
      monotone.expect_at_most(ps - clarke_surplus(spec, raised) - 1e-9);

      double const l1 = gen.uniform(0.1, 3.0);
      double const l2 = l1 + gen.uniform(0.01, 3.0);
      scaling.expect_at_most(clarke_surplus(spec, theta.scaled(l2)) / l2 -
                             clarke_surplus(spec, theta.scaled(l1)) / l1 - 1e-9);

      double const lambda = gen.uniform(1.0, 5.0);
      SurplusWelfare const sw = surplus_and_welfare(spec, theta);
      SurplusWelfare const big = surplus_and_welfare(spec, theta.scaled(lambda));
      homogeneous.expect_at_most(std::abs(big.welfare - lambda * sw.welfare) - 1e-9 * std::max(1.0, big.welfare));
      homogeneous.expect_at_most(big.surplus - lambda * sw.surplus - 1e-9);

      BidProfile const other = gen.profile(n);
      double const dist = theta.euclidean_distance(other);
      SurplusWelfare const ow = surplus_and_welfare(spec, other);
      double const u1 = spec.u_at_one();
      double const rn = std::sqrt(static_cast<double>(n));
      lipschitz.expect_at_most(std::abs(sw.welfare - ow.welfare) - u1 * rn * dist - 1e-12);
      lipschitz.expect_at_most(std::abs(sw.surplus - ow.surplus) - 2.0 * u1 * static_cast<double>(n) * rn * dist -
                               1e-12);
    }
    results.push_back(monotone.result());
    results.push_back(scaling.result());
    results.push_back(homogeneous.result());
    results.push_back(lipschitz.result());
  }

  {
    Recorder scale("allocation_scale_invariant");
    Recorder kkt("allocation_kkt_stationary");
    Recorder bisection("water_fill_matches_closed_form");
    Recorder removal("removal_raises_shares");
    for (std::size_t s = 0; s < trials; ++s)
    {
      std::size_t const n = gen.integer(2, 10);
      double const alpha = gen.alpha();
      SurrogateSpec const spec = SurrogateSpec::power_law(alpha);
      // Positive bids within a modest dynamic range keep every share representable.
      std::vector<double> bids(n);
      for (double &b : bids)
      {
        b = gen.uniform(0.5, 1.0);
      }
      BidProfile const theta(bids);
      Allocation const a = efficient_allocation(spec, theta);
      Allocation const scaled = efficient_allocation(spec, theta.scaled(gen.uniform(0.1, 10.0)));
      for (std::size_t i = 0; i < n; ++i)
      {
        scale.expect_at_most(std::abs(a[i] - scaled[i]) - 1e-10);
      }

      double lo = INFINITY;
      double hi = 0.0;
      for (std::size_t i = 0; i < n; ++i)
      {
        double const m = theta[i] * spec.u_prime(a[i]).value();
        lo = std::min(lo, m);
        hi = std::max(hi, m);
      }
      kkt.expect_at_most((hi - lo) / hi - 1e-6);

      SurrogateSpec const wrapped = SurrogateSpec::custom([&spec](double v) { return spec.u(v); },
                                                          [alpha](double v) { return (1.0 - alpha) * std::pow(v, -alpha); });
      Allocation const b = efficient_allocation(wrapped, theta);
      for (std::size_t i = 0; i < n; ++i)
      {
        bisection.expect_at_most(std::abs(a[i] - b[i]) - 1e-8);
      }

      std::size_t const k = gen.integer(0, n - 1);
      Allocation const without = allocation_without_agent(spec, theta, k);
      for (std::size_t i = 0, j = 0; i < n; ++i)
      {
        if (i != k)
        {
          removal.expect_at_most(a[i] - without[j++] - 1e-12);
        }
      }
    }
    results.push_back(scale.result());
    results.push_back(kkt.result());
    results.push_back(bisection.result());
    results.push_back(removal.result());
  }

  {
    Recorder correct("cover_correctness");
    Recorder cardinality("cover_cardinality");
    for (std::size_t n = 2; n <= 4; ++n)
    {
      for (Face face : {Face::w_face, Face::f_face})
      {
        for (double eps : {0.5, 0.3, 0.17})
        {
          CoverConfig const config{n, eps, face, 1'000'000};
          std::vector<BidProfile> const cover = epsilon_cover(config);
          std::size_t const d = free_coordinates(config);
          std::size_t const m = cover_intervals(config);
          std::size_t expected = 1;
          for (std::size_t k = 1; k <= d; ++k)
          {
            expected = expected * (m + k) / k;
          }
          cardinality.expect(cover.size() == expected);

          std::set<std::vector<double>> members;
          for (BidProfile const &p : cover)
          {
            members.insert(p.vector());
          }
          std::size_t const fixed = n - d;
          for (std::size_t s = 0; s < std::max<std::size_t>(trials / 10, 5); ++s)
          {
            std::vector<double> bids(n, 1.0);
            std::vector<double> rounded(n, 1.0);
            for (std::size_t k = fixed; k < n; ++k)
            {
              bids[k] = gen.uniform();
            }
            std::sort(bids.begin() + static_cast<std::ptrdiff_t>(fixed), bids.end(), std::greater<>());
            for (std::size_t k = fixed; k < n; ++k)
            {
              rounded[k] = std::round(bids[k] * static_cast<double>(m)) / static_cast<double>(m);
            }
            double const dist = BidProfile(bids).euclidean_distance(BidProfile(rounded));
            correct.expect(members.count(rounded) == 1 && dist <= eps);
          }
        }
      }
    }
    results.push_back(correct.result());
    results.push_back(cardinality.result());
  }

  {
    Recorder location("no_rebate_worst_case_at_all_ones");
    for (double alpha : alphas)
    {
      SurrogateSpec const spec = SurrogateSpec::power_law(alpha);
      for (std::size_t n = 2; n <= 4; ++n)
      {
        double const top = ssvcg_worst_ratio_closed(n, alpha);
        for (BidProfile const &theta : epsilon_cover({n, 0.1, Face::w_face, 1'000'000}))
        {
          SurplusWelfare const sw = surplus_and_welfare(spec, theta);
          location.expect_at_most(sw.surplus / sw.welfare - top - 1e-9);
        }
      }
    }
    Recorder increasing("no_rebate_ratio_increasing_in_n");
    for (double alpha : alphas)
    {
      for (std::size_t n = 2; n < 50; ++n)
      {
        increasing.expect(ssvcg_worst_ratio_closed(n + 1, alpha) > ssvcg_worst_ratio_closed(n, alpha));
        increasing.expect(ssvcg_worst_ratio_closed(n, alpha) < 1.0 - alpha);
      }
    }
    results.push_back(location.result());
    results.push_back(increasing.result());
  }

  {
    Recorder witness("scp_feasibility_witness");
    Recorder refinement("scp_refinement_monotone");
    Recorder roundtrip("x_c_roundtrip");
    for (std::size_t s = 0; s < std::max<std::size_t>(trials / 20, 3); ++s)
    {
      std::size_t const n = gen.integer(2, 6);
      SurrogateSpec const spec = SurrogateSpec::power_law(gen.alpha());
      SamplingConfig config;
      config.random_samples = 20 * n;
      config.seed = options.seed + s;
      TrainingSet const set = assemble_samples(n, config);
      lp::LinearProgram const program = build_scp(spec, n, set.f_samples, set.w_samples);
      std::vector<double> point(program.num_vars, 0.0);
      point.back() = options.fault == "lp_witness" ? 0.0 : 1.0;
      witness.expect(program.is_feasible(point, 0.0));

      TrainingSet half;
      half.f_samples.assign(set.f_samples.begin(), set.f_samples.begin() + static_cast<std::ptrdiff_t>(set.f_samples.size() / 2));
      half.w_samples.assign(set.w_samples.begin(), set.w_samples.begin() + static_cast<std::ptrdiff_t>(set.w_samples.size() / 2));
      double const t_half = optimize_rebates(spec, n, half).t;
      double const t_full = optimize_rebates(spec, n, set).t;
      refinement.expect_at_most(t_half - t_full - 1e-9);

      // Multiples of 2^-10 make every partial sum exact.
      std::vector<double> x(n >= 2 ? n - 2 : 0);
      for (double &v : x)
      {
        v = static_cast<double>(gen.integer(0, 1024)) / 1024.0;
      }
      roundtrip.expect(c_to_x(x_to_c(n, x)).x == x);
    }
    results.push_back(witness.result());
    results.push_back(refinement.result());
    results.push_back(roundtrip.result());
  }

  return results;
}

}  // namespace ssvcg
