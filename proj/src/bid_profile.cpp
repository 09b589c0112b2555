#include "ssvcg/bid_profile.hpp"

#include "ssvcg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ssvcg {

BidProfile::BidProfile(std::initializer_list<double> bids)
  : BidProfile(std::vector<double>(bids))
{}

BidProfile::BidProfile(std::vector<double> bids)
  : bids_(std::move(bids))
{
  for (std::size_t i = 0; i < bids_.size(); ++i)
  {
    if (!std::isfinite(bids_[i]) || bids_[i] < 0.0)
    {
      throw std::domain_error("bid " + std::to_string(i) + " must be finite and nonnegative");
    }
  }
}

BidProfile BidProfile::zeros(std::size_t n)
{
  return BidProfile(std::vector<double>(n, 0.0));
}

bool BidProfile::is_zero() const noexcept
{
  return std::all_of(bids_.begin(), bids_.end(), [](double b) { return b == 0.0; });
}

bool BidProfile::is_descending() const noexcept
{
  return std::is_sorted(bids_.begin(), bids_.end(), std::greater<>{});
}

std::size_t BidProfile::positive_count() const noexcept
{
  return static_cast<std::size_t>(
      std::count_if(bids_.begin(), bids_.end(), [](double b) { return b > 0.0; }));
}

std::vector<std::size_t> BidProfile::descending_order() const
{
  std::vector<std::size_t> order(bids_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [this](std::size_t a, std::size_t b) { return bids_[a] > bids_[b]; });
  return order;
}

BidProfile BidProfile::sorted_descending() const
{
  std::vector<double> sorted = bids_;
  std::stable_sort(sorted.begin(), sorted.end(), std::greater<>{});
  BidProfile out;
  out.bids_ = std::move(sorted);
  return out;
}

BidProfile BidProfile::without(std::size_t agent) const
{
  if (agent >= bids_.size())
  {
    throw std::out_of_range("agent index out of range");
  }
  BidProfile out;
  out.bids_.reserve(bids_.size() - 1);
  for (std::size_t j = 0; j < bids_.size(); ++j)
  {
    if (j != agent)
    {
      out.bids_.push_back(bids_[j]);
    }
  }
  return out;
}

BidProfile BidProfile::with_bid(std::size_t agent, double bid) const
{
  if (agent >= bids_.size())
  {
    throw std::out_of_range("agent index out of range");
  }
  std::vector<double> copy = bids_;
  copy[agent] = bid;
  return BidProfile(std::move(copy));
}

BidProfile BidProfile::scaled(double factor) const
{
  std::vector<double> copy = bids_;
  for (double &b : copy)
  {
    b *= factor;
  }
  return BidProfile(std::move(copy));
}

double BidProfile::euclidean_distance(BidProfile const &other) const
{
  if (other.size() != size())
  {
    throw std::invalid_argument("profiles differ in size");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < bids_.size(); ++i)
  {
    double const d = bids_[i] - other.bids_[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

void require_descending(BidProfile const &theta, char const *what)
{
  if (!theta.is_descending())
  {
    throw OrderViolation(std::string(what) + ": profile must be sorted in descending order");
  }
}

}  // namespace ssvcg
