#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace ssvcg::lp {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

enum class Sense
{
  less_equal,
  greater_equal,
};

struct Row
{
  std::vector<double> coeffs;
  double              rhs = 0.0;
  Sense               sense = Sense::less_equal;
};

/// min objective . x  s.t.  rows, lower <= x <= upper.
struct LinearProgram
{
  std::size_t         num_vars = 0;
  std::vector<double> objective;
  std::vector<Row>    rows;
  std::vector<double> lower_bounds;
  std::vector<double> upper_bounds;

  /// Shape and finiteness checks; throws std::invalid_argument.
  void validate() const;

  /// Largest violation of any row or bound at `x` (0 when feasible).
  double max_violation(std::vector<double> const &x) const;
  bool is_feasible(std::vector<double> const &x, double tolerance = 0.0) const;
};

enum class Status
{
  optimal,
  infeasible,
  unbounded,
};

enum class Route
{
  primal,
  dual,
};

struct Options
{
  /// Solve the dual when rows > dual_ratio * variables.
  double      dual_ratio = 50.0;
  /// Tableau entries at or below this magnitude are not eligible pivots.
  double      pivot_tolerance = 1e-11;
  double      cost_tolerance = 1e-11;
  /// Accepted residual of the recovered primal point.
  double      residual_tolerance = 1e-7;
  std::size_t max_iterations = 1'000'000;
};

struct Result
{
  Status              status = Status::infeasible;
  Route               route = Route::primal;
  std::vector<double> x;
  double              value = 0.0;
  std::size_t         iterations = 0;
  /// Basic column indices of the final tableau of the formulation solved.
  std::vector<std::size_t> basis;
};

/// Two-phase tableau simplex with Bland's rule throughout. Throws
/// NumericalInstability if an optimal basis yields a point whose residual
/// exceeds options.residual_tolerance.
Result solve(LinearProgram const &program, Options const &options = {});

std::string to_string(Status status);
std::string to_string(Route route);

/// Text dump: "num_vars N", "objective ...", "lower ...", "upper ...", then one
/// line per row "c1 c2 ... | <= | rhs".
void write_dump(std::ostream &os, LinearProgram const &program);
LinearProgram read_dump(std::istream &is);

}  // namespace ssvcg::lp
