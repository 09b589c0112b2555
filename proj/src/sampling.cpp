#include "ssvcg/sampling.hpp"

#include "ssvcg/errors.hpp"
#include "ssvcg/mechanism.hpp"
#include "ssvcg/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>

namespace ssvcg {

std::size_t free_coordinates(CoverConfig const &config)
{
  std::size_t const fixed = config.mode == Face::f_face ? 2 : 1;
  if (config.n < fixed)
  {
    throw std::invalid_argument("cover: face needs at least " + std::to_string(fixed) + " agents");
  }
  return config.n - fixed;
}

std::size_t cover_intervals(CoverConfig const &config)
{
  if (!(config.epsilon > 0.0) || !std::isfinite(config.epsilon))
  {
    throw std::domain_error("cover radius must be positive and finite");
  }
  std::size_t const d = free_coordinates(config);
  if (d == 0)
  {
    return 1;
  }
  double const needed = std::sqrt(static_cast<double>(d)) / (2.0 * config.epsilon);
  // The small slack keeps exact ratios such as 2.0000000000000004 at 2.
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(needed - 1e-9)));
}

std::vector<BidProfile> epsilon_cover(CoverConfig const &config)
{
  std::size_t const d = free_coordinates(config);
  std::size_t const m = cover_intervals(config);

  // Descending d-tuples over m + 1 levels: C(m + d, d).
  double count = 1.0;
  for (std::size_t k = 1; k <= d; ++k)
  {
    count = count * static_cast<double>(m + k) / static_cast<double>(k);
  }
  if (count > static_cast<double>(config.cap))
  {
    throw SampleError("cover would have about " + std::to_string(static_cast<long long>(count)) +
                      " points, above the cap of " + std::to_string(config.cap));
  }

  std::size_t const fixed = config.n - d;
  std::vector<BidProfile> cover;
  cover.reserve(static_cast<std::size_t>(count));
  std::vector<double> bids(config.n, 1.0);
  std::vector<std::size_t> levels(d);
  std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t pos, std::size_t top) {
    if (pos == d)
    {
      for (std::size_t k = 0; k < d; ++k)
      {
        bids[fixed + k] = static_cast<double>(levels[k]) / static_cast<double>(m);
      }
      cover.emplace_back(bids);
      return;
    }
    for (std::size_t level = 0; level <= top; ++level)
    {
      levels[pos] = level;
      fill(pos + 1, level);
    }
  };
  fill(0, m);
  return cover;
}

std::vector<BidProfile> random_ordered_samples(std::size_t n, std::size_t count, std::uint64_t seed)
{
  if (n < 1)
  {
    throw std::invalid_argument("random samples need at least one agent");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<BidProfile> samples;
  samples.reserve(count);
  std::vector<double> bids(n);
  for (std::size_t s = 0; s < count; ++s)
  {
    bids[0] = 1.0;
    for (std::size_t i = 1; i < n; ++i)
    {
      bids[i] = uniform(rng);
    }
    std::sort(bids.begin() + 1, bids.end(), std::greater<>());
    samples.emplace_back(bids);
  }
  return samples;
}

std::vector<BidProfile> ek_profiles(std::size_t n)
{
  std::vector<BidProfile> profiles;
  for (std::size_t k = 1; k <= n; ++k)
  {
    std::vector<double> bids(n, 0.0);
    std::fill_n(bids.begin(), k, 1.0);
    profiles.emplace_back(std::move(bids));
  }
  return profiles;
}

std::size_t calafiore_campi_count(double epsilon, double delta, std::size_t d)
{
  if (!(epsilon > 0.0 && epsilon < 1.0) || !(delta > 0.0 && delta < 1.0))
  {
    throw std::domain_error("epsilon and delta must lie in (0, 1)");
  }
  if (d < 1)
  {
    throw std::domain_error("decision dimension must be at least 1");
  }
  double const dd = static_cast<double>(d);
  double const bound = (2.0 / epsilon) * (dd * std::log(2.0 / epsilon) + std::log(1.0 / delta)) + 2.0 * dd;
  return static_cast<std::size_t>(std::ceil(bound));
}

TheoryConstants theory_constants(SurrogateSpec const &spec, std::size_t n)
{
  if (n < 2)
  {
    throw std::invalid_argument("theory constants need at least two agents");
  }
  TheoryConstants k;
  k.n = n;
  double const u1 = spec.u_at_one();
  double const nn = static_cast<double>(n);
  k.K1 = 1.0;
  k.B2 = 2.0 * u1 - 2.0 * spec.u(0.5);
  k.Bn = clarke_surplus(spec, ek_profiles(n).back());
  k.K2 = 2.0 * nn * nn * k.Bn + 2.0 * u1 * nn * std::sqrt(nn) + u1 * std::sqrt(nn);
  k.gamma = (nn + k.B2 / k.Bn) / u1;
  k.K3_inv = std::min(u1, k.B2 / (k.Bn * std::sqrt(nn - 2.0 + k.gamma * k.gamma)));
  return k;
}

double estimate_violation(SurrogateSpec const &spec, XVariables const &x, std::span<BidProfile const> samples)
{
  if (samples.empty())
  {
    throw SampleError("violation estimate needs at least one sample");
  }
  std::atomic<std::size_t> violated{0};
  parallel_for(samples.size(), [&](std::size_t s) {
    if (g(spec, x, samples[s]) > 1e-10)
    {
      violated.fetch_add(1, std::memory_order_relaxed);
    }
  });
  return static_cast<double>(violated.load()) / static_cast<double>(samples.size());
}

}  // namespace ssvcg
