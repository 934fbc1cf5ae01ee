#include <dequad/interval.hpp>

#include <dequad/error.hpp>

#include <cmath>

namespace dequad {

Interval Interval::finite(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
    throw ParameterError("finite interval needs finite a < b");
  return Interval(Kind::Finite, a, b);
}

}  // namespace dequad
