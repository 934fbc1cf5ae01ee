#pragma once

#include <cmath>

namespace dequad {

// Neumaier (improved Kahan-Babuska) running sum. Each add() is an
// error-free TwoSum; the rounding errors are accumulated separately and
// folded back in value(). The result depends only on the order of add()
// calls, so callers fix that order to get bit-reproducible sums.
class CompensatedSum {
 public:
  constexpr CompensatedSum() = default;
  constexpr explicit CompensatedSum(double initial) : sum_(initial) {}

  constexpr void add(double term) noexcept {
    const double s = sum_ + term;
    const double bp = s - sum_;
    const double err = (sum_ - (s - bp)) + (term - bp);
    sum_ = s;
    compensation_ += err;
  }

  constexpr CompensatedSum& operator+=(double term) noexcept {
    add(term);
    return *this;
  }

  constexpr double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace dequad
