#include "ssvcg/properties.hpp"

#include <doctest.h>

#include <algorithm>

using namespace ssvcg;

TEST_SUITE("properties")
{
  TEST_CASE("every property holds on a clean run")
  {
    std::vector<PropertyResult> const results = run_property_suite({11, 150, ""});
    CHECK(results.size() == 20);
    for (PropertyResult const &r : results)
    {
      INFO(r.name);
      CHECK(r.trials > 0);
      CHECK(r.failures == 0);
    }
  }

  TEST_CASE("injected faults are caught")
  {
    auto failing = [](std::string const &fault) {
      std::vector<PropertyResult> const results = run_property_suite({3, 100, fault});
      return std::count_if(results.begin(), results.end(), [](PropertyResult const &r) { return r.failures > 0; });
    };
    CHECK(failing("alpha_n") > 0);
    CHECK(failing("lp_witness") > 0);
    CHECK_THROWS_AS(run_property_suite({3, 10, "nonsense"}), std::invalid_argument);
  }
}
