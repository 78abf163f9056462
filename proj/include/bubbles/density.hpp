#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace bubbles {

/// Thrown when an operation's input violates its documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class DensityKind { AbsoluteValue };

/// Weight function on the real line together with its mass antiderivative.
///
/// Only f(x) = |x| is instantiated. Every mass and endpoint computation in
/// the library goes through `cumulative` and its inverse, so another
/// monotone antiderivative could be slotted in here.
class Density {
 public:
  constexpr Density() = default;
  constexpr explicit Density(DensityKind kind) : kind_(kind) {}

  constexpr DensityKind kind() const { return kind_; }

  double value(double x) const { return std::abs(x); }

  /// d/dx log f(x) = 1/x for |x|; undefined at the origin.
  double log_derivative(double x) const { return 1.0 / x; }

  /// Signed antiderivative F(x) = x|x|/2, odd and strictly increasing.
  double cumulative(double x) const { return 0.5 * x * std::abs(x); }

  /// Unique x with cumulative(x) == mass.
  double inverse_cumulative(double mass) const {
    return std::copysign(std::sqrt(2.0 * std::abs(mass)), mass);
  }

  /// F(b) - F(a), evaluated without cancellation when a and b share a sign.
  double mass_between(double a, double b) const {
    if (a >= 0.0) return 0.5 * (b - a) * (b + a);
    if (b <= 0.0) return 0.5 * (b - a) * (-a - b);
    return 0.5 * (a * a + b * b);
  }

  /// The b >= inner enclosing `mass` over [inner, b].
  double outer_endpoint(double inner, double mass) const {
    if (inner < 0.0) throw PreconditionError("outer_endpoint: inner endpoint must be >= 0");
    if (mass < 0.0) throw PreconditionError("outer_endpoint: mass must be >= 0");
    if (mass == 0.0) return inner;
    // b - a = 2m / (a + b) keeps the increment accurate when m << a^2.
    const double b = std::sqrt(inner * inner + 2.0 * mass);
    return inner + 2.0 * mass / (inner + b);
  }

  std::string name() const { return "abs"; }

 private:
  DensityKind kind_ = DensityKind::AbsoluteValue;
};

/// Closed interval [a, b]; `length` is always b - a.
struct Interval {
  double a = 0.0;
  double b = 0.0;

  Interval() = default;
  Interval(double lo, double hi) : a(lo), b(hi) {
    if (!(lo <= hi)) throw PreconditionError("Interval: requires a <= b");
  }

  double length() const { return b - a; }
};

inline double interval_mass(const Density& d, const Interval& iv) { return d.mass_between(iv.a, iv.b); }

inline double outer_endpoint(const Density& d, double inner, double mass) {
  return d.outer_endpoint(inner, mass);
}

}  // namespace bubbles
