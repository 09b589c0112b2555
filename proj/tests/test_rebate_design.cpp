#include "ssvcg/errors.hpp"
#include "ssvcg/mechanism.hpp"
#include "ssvcg/rebate_design.hpp"
#include "ssvcg/sampling.hpp"

#include "generators.hpp"

#include <doctest.h>

#include <cmath>

using namespace ssvcg;

namespace {

double const ps_e3 = 3.0 * std::sqrt(2.0) - 2.0 * std::sqrt(3.0);

}  // namespace

TEST_SUITE("rebate_design")
{
  TEST_CASE("alpha coefficients")
  {
    std::vector<double> const a = alpha_coefficients({1.0, 0.8, 0.5, 0.2});
    REQUIRE(a.size() == 3);
    CHECK(a[0] == doctest::Approx(2.0 * 0.5 + 2.0 * 0.8));
    CHECK(a[1] == doctest::Approx(3.0 * 0.2 + 1.0 * 0.5));
    CHECK(a[2] == 0.0);

    std::vector<double> const ones = alpha_coefficients({1.0, 1.0, 1.0});
    CHECK(ones == std::vector<double>{3.0, 0.0});
    CHECK(alpha_coefficients(BidProfile::zeros(5)) == std::vector<double>(4, 0.0));
    CHECK(alpha_coefficients({1.0, 0.0}) == std::vector<double>{0.0});
    CHECK_THROWS_AS(alpha_coefficients({0.5, 1.0, 0.2}), OrderViolation);
  }

  TEST_CASE("cumulative variables")
  {
    XVariables const x = c_to_x(RebateCoefficients(4, {0.1, -0.05}));
    CHECK(x.x[0] == 0.1);
    CHECK(x.x[1] == doctest::Approx(0.05).epsilon(1e-15));
    RebateCoefficients const c = x_to_c(4, {0.1, 0.05});
    CHECK(c.free()[0] == 0.1);
    CHECK(c.free()[1] == doctest::Approx(-0.05).epsilon(1e-15));
    CHECK(c_to_x(RebateCoefficients::zero(5)).x == std::vector<double>(3, 0.0));
    CHECK(x_to_c(2, {}).free().empty());
  }

  TEST_CASE("property: x to c to x is exact on dyadic values")
  {
    testing::Gen gen(41);
    for (int trial = 0; trial < 500; ++trial)
    {
      std::size_t const n = gen.integer(2, 12);
      std::vector<double> x(n - 2);
      for (double &v : x)
      {
        v = double(gen.integer(0, 1 << 20)) / double(1 << 16);
      }
      CHECK(c_to_x(x_to_c(n, x)).x == x);
      RebateCoefficients const c = x_to_c(n, x);
      CHECK(x_to_c(n, c_to_x(c).x).free() == c.free());
      bool nonnegative = true;
      for (double v : x)
      {
        nonnegative = nonnegative && v >= 0.0;
      }
      CHECK(c.satisfies_participation() == nonnegative);
    }
  }

  TEST_CASE("constraint functions")
  {
    SurrogateSpec const spec = SurrogateSpec::power_law(0.5);
    BidProfile const e3{1.0, 1.0, 1.0};
    XVariables zero{{0.0}, 0.0};
    CHECK(g1(spec, zero, e3) == doctest::Approx(-ps_e3));
    zero.t = 1.0;
    CHECK(g2(spec, zero, e3) == doctest::Approx(ps_e3 - std::sqrt(3.0)));
    CHECK(g2(spec, zero, e3) <= 0.0);

    XVariables const x{{0.3}, 0.0};
    CHECK(g1(spec, x, e3) == doctest::Approx(0.9 - ps_e3).epsilon(1e-13));
    CHECK(g1(spec, x, e3) == doctest::Approx(0.121461).epsilon(1e-5));
    CHECK(g(spec, x, e3) == doctest::Approx(std::max(g1(spec, x, e3), g2(spec, x, e3))));
    CHECK_THROWS_AS(g1(spec, XVariables{{0.1, 0.2}, 0.0}, e3), std::invalid_argument);
  }

  TEST_CASE("property: g2 at x = 0, t = 1 is never positive")
  {
    testing::Gen gen(42);
    for (int trial = 0; trial < 500; ++trial)
    {
      std::size_t const n = gen.integer(2, 10);
      SurrogateSpec const spec = SurrogateSpec::power_law(gen.alpha());
      BidProfile const theta = random_ordered_samples(n, 1, trial).front();
      CHECK(g2(spec, XVariables{std::vector<double>(n - 2, 0.0), 1.0}, theta) <= 0.0);
      CHECK(g1(spec, XVariables{std::vector<double>(n - 2, 0.0), 1.0}, theta) <= 0.0);
    }
  }

  TEST_CASE("sampled program for three agents")
  {
    SurrogateSpec const spec = SurrogateSpec::power_law(0.5);
    std::vector<BidProfile> const e3{{1.0, 1.0, 1.0}};
    lp::LinearProgram const program = build_scp(spec, 3, e3, e3);
    REQUIRE(program.num_vars == 2);
    CHECK(program.objective == std::vector<double>{0.0, 1.0});
    CHECK(program.lower_bounds == std::vector<double>{0.0, 0.0});
    CHECK(program.upper_bounds == std::vector<double>{lp::infinity, 1.0});
    REQUIRE(program.rows.size() == 2);
    CHECK(program.rows[0].sense == lp::Sense::less_equal);
    CHECK(program.rows[0].coeffs == std::vector<double>{3.0, 0.0});
    CHECK(program.rows[0].rhs == doctest::Approx(ps_e3).epsilon(1e-14));
    CHECK(program.rows[1].sense == lp::Sense::greater_equal);
    CHECK(program.rows[1].coeffs[0] == 3.0);
    CHECK(program.rows[1].coeffs[1] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK(program.rows[1].rhs == doctest::Approx(ps_e3).epsilon(1e-14));

    lp::Result const r = lp::solve(program);
    REQUIRE(r.status == lp::Status::optimal);
    CHECK(std::abs(r.x[0] - ps_e3 / 3.0) <= 1e-9);
    CHECK(std::abs(r.x[1]) <= 1e-9);
  }

  TEST_CASE("two agents leave only the objective variable")
  {
    SurrogateSpec const spec = SurrogateSpec::power_law(0.5);
    std::vector<BidProfile> const f{{1.0, 1.0}};
    std::vector<BidProfile> const w{{1.0, 1.0}, {1.0, 0.5}, {1.0, 0.0}};
    lp::LinearProgram const program = build_scp(spec, 2, f, w);
    CHECK(program.num_vars == 1);
    CHECK(program.rows.size() == 3);
    for (lp::Row const &row : program.rows)
    {
      CHECK(row.sense == lp::Sense::greater_equal);
    }
    lp::Result const r = lp::solve(program);
    CHECK(r.value == doctest::Approx(2.0 * std::sqrt(0.5) - 1.0).epsilon(1e-12));
  }

  TEST_CASE("welfare rows alone let rebates absorb every positive-weight sample")
  {
    // Without feasibility rows x grows freely, so only profiles whose rebate
    // weights vanish (like e_1) constrain t; their surplus is 0.
    SurrogateSpec const spec = SurrogateSpec::power_law(0.5);
    std::vector<BidProfile> const none;
    std::vector<BidProfile> const w = random_ordered_samples(4, 50, 3);
    lp::LinearProgram const program = build_scp(spec, 4, none, w);
    for (lp::Row const &row : program.rows)
    {
      CHECK(row.sense == lp::Sense::greater_equal);
    }
    CHECK(lp::solve(program).value == doctest::Approx(0.0));
  }

  TEST_CASE("sample validation")
  {
    SurrogateSpec const spec = SurrogateSpec::power_law(0.5);
    std::vector<BidProfile> const none;
    std::vector<BidProfile> const good{{1.0, 1.0, 0.5}};
    CHECK_THROWS_AS(build_scp(spec, 3, good, none), SampleError);
    std::vector<BidProfile> const f_wrong{{1.0, 0.9, 0.5}};
    CHECK_THROWS_AS(build_scp(spec, 3, f_wrong, good), SampleError);
    std::vector<BidProfile> const w_wrong{{0.9, 0.9, 0.5}};
    CHECK_THROWS_AS(build_scp(spec, 3, good, w_wrong), SampleError);
    std::vector<BidProfile> const unsorted{{1.0, 0.2, 0.5}};
    CHECK_THROWS_AS(build_scp(spec, 3, good, unsorted), SampleError);
    std::vector<BidProfile> const size{{1.0, 1.0}};
    CHECK_THROWS_AS(build_scp(spec, 3, good, size), SampleError);
    CHECK_THROWS_AS(build_scp(spec, 1, good, good), std::invalid_argument);
  }

  TEST_CASE("property: x = 0, t = 1 satisfies every generated row")
  {
    testing::Gen gen(43);
    for (int trial = 0; trial < 30; ++trial)
    {
      std::size_t const n = gen.integer(2, 9);
      SurrogateSpec const spec = SurrogateSpec::power_law(gen.alpha());
      SamplingConfig config;
      config.random_samples = 100;
      config.seed = trial;
      config.cover_epsilon = n <= 4 ? std::optional<double>(0.3) : std::nullopt;
      TrainingSet const set = assemble_samples(n, config);
      for (bool combined : {false, true})
      {
        lp::LinearProgram const program = build_scp(spec, n, set.f_samples, set.w_samples, {combined});
        std::vector<double> witness(program.num_vars, 0.0);
        witness.back() = 1.0;
        CHECK(program.is_feasible(witness, 0.0));
      }
    }
  }

  TEST_CASE("property: more samples never lower the optimum")
  {
    testing::Gen gen(44);
    for (int trial = 0; trial < 15; ++trial)
    {
      std::size_t const n = gen.integer(3, 7);
      SurrogateSpec const spec = SurrogateSpec::power_law(gen.alpha());
      SamplingConfig config;
      config.random_samples = 300;
      config.seed = 100 + trial;
      TrainingSet const full = assemble_samples(n, config);
      double previous = -INFINITY;
      for (double fraction : {0.1, 0.3, 0.6, 1.0})
      {
        TrainingSet part;
        part.f_samples.assign(full.f_samples.begin(),
                              full.f_samples.begin() + std::ptrdiff_t(fraction * full.f_samples.size()));
        part.w_samples.assign(full.w_samples.begin(),
                              full.w_samples.begin() + std::ptrdiff_t(fraction * full.w_samples.size()));
        double const t = optimize_rebates(spec, n, part).t;
        CHECK(t >= previous - 1e-9);
        previous = t;
      }
    }
  }

  TEST_CASE("property: the optimum never exceeds the no-rebate sampled ratio")
  {
    testing::Gen gen(45);
    for (int trial = 0; trial < 15; ++trial)
    {
      std::size_t const n = gen.integer(2, 8);
      SurrogateSpec const spec = SurrogateSpec::power_law(gen.alpha());
      SamplingConfig config;
      config.random_samples = 200;
      config.seed = 200 + trial;
      TrainingSet const set = assemble_samples(n, config);
      RebateDesign const design = optimize_rebates(spec, n, set);
      double const plain = worst_case_ratio(spec, RebateCoefficients::zero(n), set.w_samples).value;
      CHECK(design.t <= plain + 1e-12);
      CHECK(design.c.satisfies_participation());
      CHECK(design.within_x_bound);
      for (double x : design.x.x)
      {
        CHECK(x >= 0.0);
        CHECK(x <= design.bn + 1e-6);
      }
    }
  }

  TEST_CASE("optimized rebates")
  {
    SurrogateSpec const spec = SurrogateSpec::power_law(0.5);

    SamplingConfig small;
    small.random_samples = 500;
    RebateDesign const two = optimize_rebates(spec, 2, small);
    CHECK(two.c.free().empty());
    CHECK(two.x.x.empty());
    CHECK(two.t == doctest::Approx(2.0 * std::sqrt(0.5) - 1.0).epsilon(1e-12));

    RebateDesign const three = optimize_rebates(spec, 3);
    CHECK(three.t < 3.0 * std::sqrt(2.0 / 3.0) - 2.0);
    CHECK(three.t >= 0.0);
    CHECK(three.stats.status == lp::Status::optimal);
    CHECK(three.stats.route == lp::Route::dual);
    CHECK(three.f_rows == 2 + 15000);
    CHECK(three.w_rows == 3 + 15000);

    RebateDesign const six = optimize_rebates(spec, 6);
    CHECK(six.t > 0.0);
    CHECK(six.t < 0.5);
    CHECK(six.within_x_bound);
    CHECK(six.c.satisfies_participation());
  }

  TEST_CASE("combined sampling adds feasibility rows and can only raise the optimum")
  {
    SurrogateSpec const spec = SurrogateSpec::power_law(0.5);
    SamplingConfig config;
    config.random_samples = 300;
    RebateDesign const split = optimize_rebates(spec, 5, config);
    config.combined_g = true;
    RebateDesign const combined = optimize_rebates(spec, 5, config);
    CHECK(combined.f_rows == split.f_rows + split.w_rows);
    CHECK(combined.t >= split.t - 1e-12);
  }
}
