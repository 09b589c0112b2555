#pragma once

#include "ssvcg/bid_profile.hpp"
#include "ssvcg/rebate_design.hpp"
#include "ssvcg/surrogate.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ssvcg {

enum class Face
{
  f_face,  ///< theta_1 = theta_2 = 1
  w_face,  ///< theta_1 = 1
};

struct CoverConfig
{
  std::size_t n = 2;
  double      epsilon = 0.1;
  Face        mode = Face::w_face;
  std::size_t cap = 2'000'000;
};

/// Number of grid intervals per free coordinate: the smallest m with
/// 1/m <= 2 epsilon / sqrt(d), so rounding moves a point at most epsilon.
std::size_t cover_intervals(CoverConfig const &config);
std::size_t free_coordinates(CoverConfig const &config);

/// Descending grid profiles on the face. Throws SampleError when the point
/// count would exceed config.cap.
std::vector<BidProfile> epsilon_cover(CoverConfig const &config);

/// theta_1 = 1 and theta_2 .. theta_n iid uniform on [0, 1], sorted descending.
std::vector<BidProfile> random_ordered_samples(std::size_t n, std::size_t count, std::uint64_t seed);

/// e_1 .. e_n, where e_k has k leading ones.
std::vector<BidProfile> ek_profiles(std::size_t n);

/// ceil((2/eps)(d ln(2/eps) + ln(1/delta)) + 2d).
std::size_t calafiore_campi_count(double epsilon, double delta, std::size_t d);

struct TheoryConstants
{
  std::size_t n = 0;
  double      K1 = 1.0;
  double      K2 = 0.0;
  double      K3_inv = 0.0;
  double      B2 = 0.0;
  double      Bn = 0.0;
  double      gamma = 0.0;

  /// Distance between the values of the full and the epsilon-cover programs.
  double bound_for(double epsilon) const { return K1 * K2 * epsilon / K3_inv; }
};

TheoryConstants theory_constants(SurrogateSpec const &spec, std::size_t n);

/// Fraction of samples with g(x, theta) > 1e-10.
double estimate_violation(SurrogateSpec const &spec, XVariables const &x, std::span<BidProfile const> samples);

}  // namespace ssvcg
