#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace ssvcg {

/// Marginal value that may be +infinity (at a = 0). Callers branch on
/// is_infinite() instead of doing arithmetic with an IEEE infinity.
class Marginal
{
public:
  static Marginal infinite() noexcept { return Marginal(true, 0.0); }
  static Marginal finite(double value) noexcept { return Marginal(false, value); }

  bool is_infinite() const noexcept { return infinite_; }
  /// Only meaningful when !is_infinite().
  double value() const noexcept { return value_; }

  /// True when this marginal exceeds `level` (an infinite marginal exceeds everything).
  bool exceeds(double level) const noexcept { return infinite_ || value_ > level; }

private:
  Marginal(bool infinite, double value) noexcept
    : infinite_(infinite)
    , value_(value)
  {}

  bool   infinite_;
  double value_;
};

struct PowerLaw
{
  double alpha;  ///< U(a) = a^(1 - alpha), alpha in (0, 1)
};

struct CustomUtility
{
  std::function<double(double)> u;        ///< defined on [0, 1]
  std::function<double(double)> u_prime;  ///< defined on (0, 1]
};

/// Announced surrogate family v(a, theta) = theta * U(a). Immutable.
class SurrogateSpec
{
public:
  static SurrogateSpec power_law(double alpha);
  static SurrogateSpec custom(std::function<double(double)> u, std::function<double(double)> u_prime);

  bool is_power_law() const noexcept { return std::holds_alternative<PowerLaw>(kind_); }
  /// Throws std::logic_error for a custom spec.
  double alpha() const;

  double u(double a) const;
  Marginal u_prime(double a) const;
  double u_at_one() const noexcept { return u_at_one_; }

  std::variant<PowerLaw, CustomUtility> const &kind() const noexcept { return kind_; }

private:
  explicit SurrogateSpec(std::variant<PowerLaw, CustomUtility> kind);

  std::variant<PowerLaw, CustomUtility> kind_;
  double u_at_one_ = 1.0;
};

enum class ViolationKind
{
  nonzero_at_origin,
  not_increasing,
  not_concave,
  non_finite,
};

struct AssumptionViolation
{
  ViolationKind kind;
  std::size_t   index;  ///< grid index where the violation was detected
  double        a;      ///< grid location
};

struct AssumptionReport
{
  bool                             passed = true;
  std::vector<AssumptionViolation> violations;
};

/// Audits U(0) = 0, strict monotonicity and strict concavity on a uniform grid
/// of `grid_size` points over [0, 1].
AssumptionReport check_assumptions(SurrogateSpec const &spec, std::size_t grid_size);

std::string to_string(ViolationKind kind);

}  // namespace ssvcg
