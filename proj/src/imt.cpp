#include "imt_detail.hpp"

#include <dequad/error.hpp>
#include <dequad/quadrature.hpp>
#include <dequad/transforms.hpp>

#include <cmath>
#include <mutex>
#include <unordered_map>

namespace dequad {

namespace detail {

namespace {

class CumulativeCache {
 public:
  bool find(double u, double& out) {
    std::scoped_lock lock(mutex_);
    const auto it = values_.find(u);
    if (it == values_.end()) return false;
    out = it->second;
    return true;
  }

  void store(double u, double value) {
    std::scoped_lock lock(mutex_);
    if (values_.size() >= capacity) values_.clear();
    values_.emplace(u, value);
  }

 private:
  static constexpr std::size_t capacity = 1 << 16;
  std::mutex mutex_;
  std::unordered_map<double, double> values_;
};

CumulativeCache& cache() {
  static CumulativeCache instance;
  return instance;
}

}  // namespace

double imt_density(double s) noexcept {
  if (!(s > 0.0 && s < 1.0)) return 0.0;
  return std::exp(-(1.0 / s + 1.0 / (1.0 - s)));
}

double imt_lower_integral(double u) {
  if (!(u >= 0.0 && u <= 0.5)) throw DomainError("IMT lower integral needs u in [0, 1/2]");
  if (u == 0.0) return 0.0;
  // s = 1 / (1/u + y) turns the integral into
  //   exp(-1/u) int_0^inf exp(-y) exp(-w / (w - 1)) / w^2 dy,  w = 1/u + y,
  // a smooth Laplace-type integrand. Integrating the density directly on
  // (0, u) loses most digits once the peak at s = u gets sharp.
  const double w0 = 1.0 / u;
  const auto g = [w0](double y) {
    const double w = w0 + y;
    return std::exp(-y - w / (w - 1.0)) / (w * w);
  };
  double tail = 0.0;
  try {
    tail = integrate(g, Interval::half_line(), QuadratureOptions::adaptive(1e-300, 1e-15, 10))
               .value;
  } catch (const NoConvergence& e) {
    tail = e.best_value();
  }
  return std::exp(-w0) * tail;
}

double imt_cumulative(double u) {
  if (std::isnan(u)) throw NonFiniteInput("IMT argument is NaN");
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  if (u > 0.5) return 1.0 - imt_cumulative(1.0 - u);
  double value = 0.0;
  if (cache().find(u, value)) return value;
  value = imt_lower_integral(u) / imt_normalizer();
  cache().store(u, value);
  return value;
}

}  // namespace detail

double imt_normalizer() {
  // Symmetric about 1/2; doubling the half integral makes phi(1/2) = 1/2 exactly.
  static const double q = 2.0 * detail::imt_lower_integral(0.5);
  return q;
}

}  // namespace dequad
