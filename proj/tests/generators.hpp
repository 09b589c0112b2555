#pragma once

#include "ssvcg/bid_profile.hpp"

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <random>
#include <vector>

namespace testing {

inline constexpr double alphas[] = {0.01, 0.25, 0.5, 0.75, 0.99};

/// Seeded random inputs for property tests.
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

  /// Bids in [0, 1], roughly one in ten exactly zero.
  ssvcg::BidProfile profile(std::size_t n)
  {
    std::vector<double> bids(n);
    for (double &b : bids)
    {
      b = integer(0, 9) == 0 ? 0.0 : uniform();
    }
    return ssvcg::BidProfile(std::move(bids));
  }

  ssvcg::BidProfile positive_profile(std::size_t n, double lo = 0.05, double hi = 1.0)
  {
    std::vector<double> bids(n);
    for (double &b : bids)
    {
      b = uniform(lo, hi);
    }
    return ssvcg::BidProfile(std::move(bids));
  }

  ssvcg::BidProfile ordered(std::size_t n) { return profile(n).sorted_descending(); }

  std::vector<double> reals(std::size_t count, double lo, double hi)
  {
    std::vector<double> out(count);
    for (double &v : out)
    {
      v = uniform(lo, hi);
    }
    return out;
  }

private:
  std::mt19937_64 rng_;
};

}  // namespace testing
