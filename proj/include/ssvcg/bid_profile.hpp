#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ssvcg {

/// Vector of nonnegative finite scalar bids, one per agent.
class BidProfile
{
public:
  BidProfile() = default;
  BidProfile(std::initializer_list<double> bids);
  explicit BidProfile(std::vector<double> bids);

  static BidProfile zeros(std::size_t n);

  std::size_t size() const noexcept { return bids_.size(); }
  double operator[](std::size_t i) const { return bids_[i]; }
  std::span<const double> values() const noexcept { return bids_; }
  std::vector<double> const &vector() const noexcept { return bids_; }

  bool is_zero() const noexcept;
  bool is_descending() const noexcept;
  std::size_t positive_count() const noexcept;

  /// Bids in descending order; the permutation that produced it is available
  /// through descending_order().
  BidProfile sorted_descending() const;
  /// Stable ordering of agent indices by descending bid (ties keep index order).
  std::vector<std::size_t> descending_order() const;

  BidProfile without(std::size_t agent) const;
  BidProfile with_bid(std::size_t agent, double bid) const;
  BidProfile scaled(double factor) const;

  double euclidean_distance(BidProfile const &other) const;

  friend bool operator==(BidProfile const &, BidProfile const &) = default;

private:
  std::vector<double> bids_;
};

/// Throws OrderViolation unless the profile is descending.
void require_descending(BidProfile const &theta, char const *what);

}  // namespace ssvcg
