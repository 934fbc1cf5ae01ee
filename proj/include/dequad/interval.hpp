#pragma once

#include <limits>

namespace dequad {

// Integration domain: a finite interval (a, b), the half line (0, inf) or
// the whole real line.
class Interval {
 public:
  enum class Kind { Finite, HalfLine, RealLine };

  // Throws ParameterError unless a < b and both are finite.
  static Interval finite(double a, double b);
  static Interval half_line() noexcept {
    return Interval(Kind::HalfLine, 0.0, std::numeric_limits<double>::infinity());
  }
  static Interval real_line() noexcept {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return Interval(Kind::RealLine, -inf, inf);
  }

  Kind kind() const noexcept { return kind_; }
  double lower() const noexcept { return a_; }
  double upper() const noexcept { return b_; }
  bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  double width() const noexcept { return b_ - a_; }

  // Strict interior test.
  bool contains(double x) const noexcept { return a_ < x && x < b_; }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  Interval(Kind kind, double a, double b) noexcept : kind_(kind), a_(a), b_(b) {}

  Kind kind_;
  double a_;
  double b_;
};

}  // namespace dequad
