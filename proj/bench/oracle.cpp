#include <dequad/bench.hpp>
#include <dequad/summation.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dequad::bench {

void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights) {
  if (order < 1) throw std::invalid_argument("Gauss-Legendre order must be >= 1");
  nodes.assign(order, 0.0);
  weights.assign(order, 0.0);
  for (int i = 0; i < order; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (order == 1) p0 = 1.0;
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) <= 1e-16 * std::fabs(x)) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= order; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = order == 1 ? 1.0 : order * (x * p1 - p0) / (x * x - 1.0);
    nodes[i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

namespace {

template <class F>
double composite_gauss(F&& f, double a, double b, int panels, int order) {
  std::vector<double> x;
  std::vector<double> w;
  gauss_legendre(order, x, w);
  CompensatedSum acc;
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    for (int i = 0; i < order; ++i) acc += 0.5 * width * w[i] * f(mid + 0.5 * width * x[i]);
  }
  return acc.value();
}

}  // namespace

double fig1_gauss_oracle(int panels, int order) {
  // [0, 1]: x = 1 - u^4, (1 - x)^(1/4) = u, dx = -4u^3 du.
  const auto right = [](double u) {
    const double u4 = u * u * u * u;
    return 4.0 * u * u / ((-1.0 - u4) * std::pow(2.0 - u4, 0.75));
  };
  // [-1, 0]: x = v^4 - 1, (1 + x)^(3/4) = v^3, dx = 4v^3 dv.
  const auto left = [](double v) {
    const double v4 = v * v * v * v;
    return 4.0 / ((v4 - 3.0) * std::pow(2.0 - v4, 0.25));
  };
  return composite_gauss(right, 0.0, 1.0, panels, order) +
         composite_gauss(left, 0.0, 1.0, panels, order);
}

double fourier_period_oracle(const FourierOracleInput& in, int periods, int order) {
  if (periods < 2 || periods % 2 != 0)
    throw std::invalid_argument("period oracle needs an even number of half periods");
  std::vector<double> x;
  std::vector<double> w;
  gauss_legendre(order, x, w);
  CompensatedSum acc;
  constexpr double pi = std::numbers::pi;
  for (int k = 0; k < periods; ++k) {
    const double mid = (k + 0.5) * pi;
    for (int i = 0; i < order; ++i) {
      const double xi = mid + 0.5 * pi * x[i];
      acc += 0.5 * pi * w[i] * in.f1(xi) * std::sin(xi);
    }
  }
  // X is a multiple of 2 pi: sin X = 0, cos X = 1.
  const double X = periods * pi;
  acc += in.f1(X) - in.f1_second(X) + in.f1_fourth(X);
  return acc.value();
}

}  // namespace dequad::bench
