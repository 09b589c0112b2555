#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ssvcg {

struct PropertyResult
{
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  /// Largest observed violation of the property's inequality.
  double      worst = 0.0;
};

struct CheckOptions
{
  std::uint64_t seed = 7;
  std::size_t   trials = 200;
  /// Test hook: name of a deliberately broken ingredient ("alpha_n" or
  /// "lp_witness"). Empty for a normal run.
  std::string   fault;
};

/// Runs every invariant check and reports per-property counts.
std::vector<PropertyResult> run_property_suite(CheckOptions const &options = {});

}  // namespace ssvcg
