#include "ssvcg/lp.hpp"

#include "ssvcg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ssvcg::lp {

void LinearProgram::validate() const
{
  auto require = [](bool ok, char const *message) {
    if (!ok)
    {
      throw std::invalid_argument(std::string("linear program: ") + message);
    }
  };
  require(objective.size() == num_vars, "objective size differs from num_vars");
  require(lower_bounds.size() == num_vars, "lower bound count differs from num_vars");
  require(upper_bounds.size() == num_vars, "upper bound count differs from num_vars");
  for (double v : objective)
  {
    require(std::isfinite(v), "objective coefficients must be finite");
  }
  for (std::size_t j = 0; j < num_vars; ++j)
  {
    require(!std::isnan(lower_bounds[j]) && !std::isnan(upper_bounds[j]), "bounds must not be NaN");
    require(lower_bounds[j] != infinity && upper_bounds[j] != -infinity, "bounds point the wrong way");
  }
  for (Row const &row : rows)
  {
    require(row.coeffs.size() == num_vars, "row dimension differs from num_vars");
    require(std::isfinite(row.rhs), "row right-hand sides must be finite");
    for (double v : row.coeffs)
    {
      require(std::isfinite(v), "row coefficients must be finite");
    }
  }
}

double LinearProgram::max_violation(std::vector<double> const &x) const
{
  if (x.size() != num_vars)
  {
    throw std::invalid_argument("point dimension differs from num_vars");
  }
  double worst = 0.0;
  for (std::size_t j = 0; j < num_vars; ++j)
  {
    worst = std::max({worst, lower_bounds[j] - x[j], x[j] - upper_bounds[j]});
  }
  for (Row const &row : rows)
  {
    double lhs = 0.0;
    for (std::size_t j = 0; j < num_vars; ++j)
    {
      lhs += row.coeffs[j] * x[j];
    }
    worst = std::max(worst, row.sense == Sense::less_equal ? lhs - row.rhs : row.rhs - lhs);
  }
  return worst;
}

bool LinearProgram::is_feasible(std::vector<double> const &x, double tolerance) const
{
  return max_violation(x) <= tolerance;
}

namespace {

// --- canonical form: min c.w + offset, G w >= h, w >= 0 -------------------

struct VarMap
{
  enum class Kind
  {
    shifted,    // x = base + w
    reflected,  // x = base - w
    split,      // x = w - w'
  };
  Kind        kind;
  double      base;
  std::size_t column;
};

struct Canonical
{
  std::size_t                      columns = 0;
  std::vector<std::vector<double>> g;
  std::vector<double>              h;
  std::vector<double>              c;
  std::vector<VarMap>              map;
};

Canonical canonicalize(LinearProgram const &program)
{
  Canonical out;
  for (std::size_t j = 0; j < program.num_vars; ++j)
  {
    double const lo = program.lower_bounds[j];
    double const hi = program.upper_bounds[j];
    if (std::isfinite(lo))
    {
      out.map.push_back({VarMap::Kind::shifted, lo, out.columns++});
    }
    else if (std::isfinite(hi))
    {
      out.map.push_back({VarMap::Kind::reflected, hi, out.columns++});
    }
    else
    {
      out.map.push_back({VarMap::Kind::split, 0.0, out.columns});
      out.columns += 2;
    }
  }

  // Substitutes x into sum_j a_j x_j, returning coefficients over w and the constant.
  auto substitute = [&out](std::vector<double> const &a, std::vector<double> &coeffs) {
    coeffs.assign(out.columns, 0.0);
    double constant = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j)
    {
      VarMap const &m = out.map[j];
      switch (m.kind)
      {
      case VarMap::Kind::shifted:
        coeffs[m.column] += a[j];
        constant += a[j] * m.base;
        break;
      case VarMap::Kind::reflected:
        coeffs[m.column] -= a[j];
        constant += a[j] * m.base;
        break;
      case VarMap::Kind::split:
        coeffs[m.column] += a[j];
        coeffs[m.column + 1] -= a[j];
        break;
      }
    }
    return constant;
  };

  substitute(program.objective, out.c);

  for (Row const &row : program.rows)
  {
    std::vector<double> coeffs;
    double const constant = substitute(row.coeffs, coeffs);
    double rhs = row.rhs - constant;
    if (row.sense == Sense::less_equal)
    {
      for (double &v : coeffs)
      {
        v = -v;
      }
      rhs = -rhs;
    }
    out.g.push_back(std::move(coeffs));
    out.h.push_back(rhs);
  }

  // Finite upper bounds on shifted variables become rows -w >= -(u - l).
  for (std::size_t j = 0; j < program.num_vars; ++j)
  {
    VarMap const &m = out.map[j];
    if (m.kind == VarMap::Kind::shifted && std::isfinite(program.upper_bounds[j]))
    {
      std::vector<double> coeffs(out.columns, 0.0);
      coeffs[m.column] = -1.0;
      out.g.push_back(std::move(coeffs));
      out.h.push_back(-(program.upper_bounds[j] - m.base));
    }
  }
  return out;
}

std::vector<double> recover(Canonical const &canonical, std::vector<double> const &w)
{
  std::vector<double> x(canonical.map.size());
  for (std::size_t j = 0; j < canonical.map.size(); ++j)
  {
    VarMap const &m = canonical.map[j];
    switch (m.kind)
    {
    case VarMap::Kind::shifted:
      x[j] = m.base + w[m.column];
      break;
    case VarMap::Kind::reflected:
      x[j] = m.base - w[m.column];
      break;
    case VarMap::Kind::split:
      x[j] = w[m.column] - w[m.column + 1];
      break;
    }
  }
  return x;
}

// --- standard form: min c.z, A z = b, z >= 0, b >= 0 -----------------------

struct Standard
{
  std::size_t         rows = 0;
  std::size_t         columns = 0;
  std::vector<double> a;  // rows x columns, row-major
  std::vector<double> b;
  std::vector<double> c;
  /// Per row, a column that is the unit vector for that row, if any.
  std::vector<std::ptrdiff_t> unit_column;
};

struct CoreResult
{
  Status                   status = Status::infeasible;
  std::vector<double>      z;
  std::vector<double>      reduced_costs;
  std::vector<std::size_t> basis;
  std::size_t              iterations = 0;
};

class Tableau
{
public:
  Tableau(Standard const &problem, Options const &options)
    : options_(options)
    , rows_(problem.rows)
    , structural_(problem.columns)
  {
    for (std::ptrdiff_t u : problem.unit_column)
    {
      if (u < 0)
      {
        ++artificials_;
      }
    }
    columns_ = structural_ + artificials_;
    width_ = columns_ + 1;
    data_.assign((rows_ + 1) * width_, 0.0);
    basis_.resize(rows_);
    std::size_t next_artificial = structural_;
    for (std::size_t r = 0; r < rows_; ++r)
    {
      std::copy_n(problem.a.begin() + static_cast<std::ptrdiff_t>(r * structural_), structural_,
                  data_.begin() + static_cast<std::ptrdiff_t>(r * width_));
      at(r, columns_) = problem.b[r];
      if (problem.unit_column[r] >= 0)
      {
        basis_[r] = static_cast<std::size_t>(problem.unit_column[r]);
      }
      else
      {
        at(r, next_artificial) = 1.0;
        basis_[r] = next_artificial++;
      }
    }
  }

  CoreResult run(std::vector<double> const &cost)
  {
    CoreResult result;
    if (artificials_ > 0)
    {
      // Phase 1: minimize the sum of artificials.
      std::vector<double> phase_one(columns_, 0.0);
      std::fill(phase_one.begin() + static_cast<std::ptrdiff_t>(structural_), phase_one.end(), 1.0);
      price(phase_one);
      if (iterate(false) != Status::optimal)
      {
        throw NumericalInstability("simplex: phase 1 reported an unbounded ray");
      }
      double scale = 1.0;
      for (std::size_t r = 0; r < rows_; ++r)
      {
        scale = std::max(scale, std::abs(at(r, columns_)));
      }
      if (-at(rows_, columns_) > 1e-9 * scale)
      {
        result.status = Status::infeasible;
        result.iterations = iterations_;
        return result;
      }
      evict_artificials();
    }

    std::vector<double> phase_two(columns_, 0.0);
    std::copy(cost.begin(), cost.end(), phase_two.begin());
    price(phase_two);
    result.status = iterate(true);
    result.iterations = iterations_;
    result.basis = basis_;
    if (result.status != Status::optimal)
    {
      return result;
    }
    result.z.assign(structural_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r)
    {
      if (basis_[r] < structural_)
      {
        result.z[basis_[r]] = std::max(0.0, at(r, columns_));
      }
    }
    result.reduced_costs.assign(data_.begin() + static_cast<std::ptrdiff_t>(rows_ * width_),
                                data_.begin() + static_cast<std::ptrdiff_t>(rows_ * width_ + structural_));
    return result;
  }

private:
  double &at(std::size_t r, std::size_t col) { return data_[r * width_ + col]; }

  /// Objective row <- reduced costs of `cost` for the current basis.
  void price(std::vector<double> const &cost)
  {
    double *obj = &data_[rows_ * width_];
    std::copy(cost.begin(), cost.end(), obj);
    obj[columns_] = 0.0;
    for (std::size_t r = 0; r < rows_; ++r)
    {
      double const cb = cost[basis_[r]];
      if (cb == 0.0)
      {
        continue;
      }
      double const *row = &data_[r * width_];
      for (std::size_t col = 0; col < width_; ++col)
      {
        obj[col] -= cb * row[col];
      }
    }
  }

  void pivot(std::size_t pr, std::size_t pc)
  {
    double *prow = &data_[pr * width_];
    double const inv = 1.0 / prow[pc];
    for (std::size_t col = 0; col < width_; ++col)
    {
      prow[col] *= inv;
    }
    prow[pc] = 1.0;
    for (std::size_t r = 0; r <= rows_; ++r)
    {
      if (r == pr)
      {
        continue;
      }
      double *row = &data_[r * width_];
      double const factor = row[pc];
      if (factor == 0.0)
      {
        continue;
      }
      for (std::size_t col = 0; col < width_; ++col)
      {
        row[col] -= factor * prow[col];
      }
      row[pc] = 0.0;
    }
    basis_[pr] = pc;
    ++iterations_;
  }

  /// Bland's rule: lowest-index improving column enters; among minimum-ratio
  /// rows the one whose basic variable has the lowest index leaves.
  Status iterate(bool exclude_artificials)
  {
    std::size_t const eligible = exclude_artificials ? structural_ : columns_;
    while (true)
    {
      if (iterations_ >= options_.max_iterations)
      {
        throw ConvergenceError("simplex: iteration cap reached");
      }
      double const *obj = &data_[rows_ * width_];
      std::size_t entering = eligible;
      for (std::size_t col = 0; col < eligible; ++col)
      {
        if (obj[col] < -options_.cost_tolerance)
        {
          entering = col;
          break;
        }
      }
      if (entering == eligible)
      {
        return Status::optimal;
      }

      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows_; ++r)
      {
        double const entry = at(r, entering);
        if (entry > options_.pivot_tolerance)
        {
          best_ratio = std::min(best_ratio, std::max(0.0, at(r, columns_)) / entry);
        }
      }
      std::size_t leaving = rows_;
      double const slack = 1e-12 * std::max(1.0, best_ratio);
      for (std::size_t r = 0; r < rows_ && std::isfinite(best_ratio); ++r)
      {
        double const entry = at(r, entering);
        if (entry > options_.pivot_tolerance && std::max(0.0, at(r, columns_)) / entry <= best_ratio + slack &&
            (leaving == rows_ || basis_[r] < basis_[leaving]))
        {
          leaving = r;
        }
      }
      if (leaving == rows_)
      {
        return Status::unbounded;
      }
      pivot(leaving, entering);
    }
  }

  /// After phase 1, swap zero-level artificials out of the basis where a
  /// structural pivot exists; otherwise the row is redundant and stays inert.
  void evict_artificials()
  {
    for (std::size_t r = 0; r < rows_; ++r)
    {
      if (basis_[r] < structural_)
      {
        continue;
      }
      for (std::size_t col = 0; col < structural_; ++col)
      {
        if (std::abs(at(r, col)) > options_.pivot_tolerance)
        {
          pivot(r, col);
          break;
        }
      }
    }
  }

  Options                  options_;
  std::size_t              rows_;
  std::size_t              structural_;
  std::size_t              artificials_ = 0;
  std::size_t              columns_ = 0;
  std::size_t              width_ = 0;
  std::vector<double>      data_;
  std::vector<std::size_t> basis_;
  std::size_t              iterations_ = 0;
};

// Primal: G w - s = h, negated where h <= 0 so the surplus column is a unit basis.
CoreResult solve_primal(Canonical const &canonical, Options const &options)
{
  std::size_t const m = canonical.g.size();
  Standard problem;
  problem.rows = m;
  problem.columns = canonical.columns + m;
  problem.a.assign(m * problem.columns, 0.0);
  problem.b.resize(m);
  problem.unit_column.assign(m, -1);
  problem.c.assign(problem.columns, 0.0);
  std::copy(canonical.c.begin(), canonical.c.end(), problem.c.begin());
  for (std::size_t i = 0; i < m; ++i)
  {
    double const sign = canonical.h[i] <= 0.0 ? -1.0 : 1.0;
    double *row = &problem.a[i * problem.columns];
    for (std::size_t j = 0; j < canonical.columns; ++j)
    {
      row[j] = sign * canonical.g[i][j];
    }
    row[canonical.columns + i] = -sign;
    problem.b[i] = sign * canonical.h[i];
    if (sign < 0.0)
    {
      problem.unit_column[i] = static_cast<std::ptrdiff_t>(canonical.columns + i);
    }
  }
  Tableau tableau(problem, options);
  CoreResult core = tableau.run(problem.c);
  if (core.status == Status::optimal)
  {
    core.z.resize(canonical.columns);
  }
  return core;
}

// Dual: max h.y s.t. G^T y <= c, y >= 0, solved as min -h.y with slacks.
// The primal w_j is the reduced cost of slack j at the dual optimum.
CoreResult solve_dual(Canonical const &canonical, Options const &options)
{
  std::size_t const m = canonical.g.size();
  std::size_t const k = canonical.columns;
  Standard problem;
  problem.rows = k;
  problem.columns = m + k;
  problem.a.assign(k * problem.columns, 0.0);
  problem.b.resize(k);
  problem.unit_column.assign(k, -1);
  problem.c.assign(problem.columns, 0.0);
  for (std::size_t i = 0; i < m; ++i)
  {
    problem.c[i] = -canonical.h[i];
  }
  for (std::size_t j = 0; j < k; ++j)
  {
    double const sign = canonical.c[j] >= 0.0 ? 1.0 : -1.0;
    double *row = &problem.a[j * problem.columns];
    for (std::size_t i = 0; i < m; ++i)
    {
      row[i] = sign * canonical.g[i][j];
    }
    row[m + j] = sign;
    problem.b[j] = sign * canonical.c[j];
    if (sign > 0.0)
    {
      problem.unit_column[j] = static_cast<std::ptrdiff_t>(m + j);
    }
  }
  Tableau tableau(problem, options);
  CoreResult core = tableau.run(problem.c);
  if (core.status == Status::optimal)
  {
    std::vector<double> w(k);
    for (std::size_t j = 0; j < k; ++j)
    {
      w[j] = std::max(0.0, core.reduced_costs[m + j]);
    }
    core.z = std::move(w);
  }
  return core;
}

}  // namespace

Result solve(LinearProgram const &program, Options const &options)
{
  program.validate();
  Result result;
  for (std::size_t j = 0; j < program.num_vars; ++j)
  {
    if (program.lower_bounds[j] > program.upper_bounds[j])
    {
      result.status = Status::infeasible;
      return result;
    }
  }

  Canonical const canonical = canonicalize(program);
  bool const use_dual = static_cast<double>(canonical.g.size()) >
                        options.dual_ratio * static_cast<double>(std::max<std::size_t>(canonical.columns, 1));

  CoreResult core;
  if (use_dual)
  {
    result.route = Route::dual;
    core = solve_dual(canonical, options);
    if (core.status == Status::unbounded)
    {
      result.status = Status::infeasible;
      result.iterations = core.iterations;
      return result;
    }
    if (core.status == Status::infeasible)
    {
      // Dual infeasibility leaves the primal infeasible or unbounded; let the
      // primal solve decide.
      result.route = Route::primal;
      std::size_t const spent = core.iterations;
      core = solve_primal(canonical, options);
      core.iterations += spent;
    }
  }
  else
  {
    result.route = Route::primal;
    core = solve_primal(canonical, options);
  }

  result.status = core.status;
  result.iterations = core.iterations;
  result.basis = core.basis;
  if (core.status != Status::optimal)
  {
    return result;
  }

  result.x = recover(canonical, core.z);
  result.value = 0.0;
  for (std::size_t j = 0; j < program.num_vars; ++j)
  {
    result.value += program.objective[j] * result.x[j];
  }
  double scale = 1.0;
  for (Row const &row : program.rows)
  {
    scale = std::max(scale, std::abs(row.rhs));
  }
  double const violation = program.max_violation(result.x);
  if (violation > options.residual_tolerance * scale)
  {
    throw NumericalInstability("simplex: recovered point violates constraints by " + std::to_string(violation));
  }
  return result;
}

std::string to_string(Status status)
{
  switch (status)
  {
  case Status::optimal:
    return "optimal";
  case Status::infeasible:
    return "infeasible";
  case Status::unbounded:
    return "unbounded";
  }
  return "unknown";
}

std::string to_string(Route route)
{
  return route == Route::primal ? "primal" : "dual";
}

void write_dump(std::ostream &os, LinearProgram const &program)
{
  auto const flags = os.flags();
  auto const precision = os.precision();
  os << std::setprecision(17);
  auto list = [&os](char const *label, std::vector<double> const &values) {
    os << label;
    for (double v : values)
    {
      os << ' ' << v;
    }
    os << '\n';
  };
  os << "num_vars " << program.num_vars << '\n';
  list("objective", program.objective);
  list("lower", program.lower_bounds);
  list("upper", program.upper_bounds);
  for (Row const &row : program.rows)
  {
    for (std::size_t j = 0; j < row.coeffs.size(); ++j)
    {
      os << (j == 0 ? "" : " ") << row.coeffs[j];
    }
    os << " | " << (row.sense == Sense::less_equal ? "<=" : ">=") << " | " << row.rhs << '\n';
  }
  os.flags(flags);
  os.precision(precision);
}

namespace {

std::vector<double> parse_numbers(std::istringstream &ss)
{
  std::vector<double> values;
  std::string token;
  while (ss >> token)
  {
    values.push_back(std::stod(token));
  }
  return values;
}

}  // namespace

LinearProgram read_dump(std::istream &is)
{
  LinearProgram program;
  std::string line;
  auto expect = [&](char const *label) {
    if (!std::getline(is, line))
    {
      throw std::invalid_argument(std::string("lp dump: missing '") + label + "' line");
    }
    std::istringstream ss(line);
    std::string head;
    ss >> head;
    if (head != label)
    {
      throw std::invalid_argument(std::string("lp dump: expected '") + label + "', found '" + head + "'");
    }
    return ss;
  };
  {
    auto ss = expect("num_vars");
    ss >> program.num_vars;
  }
  {
    auto ss = expect("objective");
    program.objective = parse_numbers(ss);
  }
  {
    auto ss = expect("lower");
    program.lower_bounds = parse_numbers(ss);
  }
  {
    auto ss = expect("upper");
    program.upper_bounds = parse_numbers(ss);
  }
  while (std::getline(is, line))
  {
    if (line.empty())
    {
      continue;
    }
    auto const first = line.find('|');
    auto const second = line.find('|', first + 1);
    if (first == std::string::npos || second == std::string::npos)
    {
      throw std::invalid_argument("lp dump: malformed row '" + line + "'");
    }
    Row row;
    std::istringstream coeffs(line.substr(0, first));
    row.coeffs = parse_numbers(coeffs);
    std::istringstream sense(line.substr(first + 1, second - first - 1));
    std::string token;
    sense >> token;
    if (token == "<=")
    {
      row.sense = Sense::less_equal;
    }
    else if (token == ">=")
    {
      row.sense = Sense::greater_equal;
    }
    else
    {
      throw std::invalid_argument("lp dump: unknown sense '" + token + "'");
    }
    row.rhs = std::stod(line.substr(second + 1));
    program.rows.push_back(std::move(row));
  }
  program.validate();
  return program;
}

}  // namespace ssvcg::lp
