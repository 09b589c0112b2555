#pragma once

#include "ssvcg/bid_profile.hpp"

#include <cstddef>

namespace ssvcg {

/// Closed forms for the power-law surrogate U(a) = a^(1 - alpha), kept
/// independent of the allocation code so they can cross-check it.

/// ||theta||_{1/alpha}, computed in log space so alpha near 0 does not overflow.
double sigma_closed(BidProfile const &theta, double alpha);

/// sum_j ||theta_{-j}||_{1/alpha} - (n - 1) ||theta||_{1/alpha}.
double ps_closed(BidProfile const &theta, double alpha);

/// p_S / sigma_S at the all-ones profile: n (1 - 1/n)^alpha - (n - 1).
double ssvcg_worst_ratio_closed(std::size_t n, double alpha);

/// Symmetric equilibrium bid v'(1/n) / ((1 - alpha) n^alpha).
double mu_ne_closed(double vprime_at_1_over_n, std::size_t n, double alpha);

}  // namespace ssvcg
