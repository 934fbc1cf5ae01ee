#include <dequad/sinc.hpp>

#include <dequad/error.hpp>
#include <dequad/summation.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace dequad {

namespace {

// sin(pi u) with exact zeros at the integers.
double sinpi(double u) {
  const double n = std::nearbyint(u);
  const double r = u - n;
  const double s = std::sin(std::numbers::pi * r);
  return std::fmod(n, 2.0) == 0.0 ? s : -s;
}

// scale: magnitude of the operands u was computed from, in units of u
double snap_to_integer(double u, double scale) {
  const double n = std::nearbyint(u);
  const double tol = 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + scale);
  return std::fabs(u - n) <= tol ? n : u;
}

Transform sinc_transform(SincVariant variant) {
  return variant == SincVariant::SE ? Transform::se_sinc_map() : Transform::de_sinc_map();
}

void require_sample_grid(int grid_points) {
  if (grid_points < 100) throw ParameterError("sup_error needs at least 100 grid points");
}

template <class Eval>
double dense_sup_error(Eval&& eval, const std::function<double(double)>& f, int grid_points) {
  require_sample_grid(grid_points);
  const double lo = sup_error_margin;
  const double span = 1.0 - 2.0 * sup_error_margin;
  double worst = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double x = lo + span * i / (grid_points - 1);
    worst = std::max(worst, std::fabs(eval(x) - f(x)));
  }
  return worst;
}

}  // namespace

double sinc_kernel(long k, double h, double t) {
  const double kh = static_cast<double>(k) * h;
  const double u = snap_to_integer((t - kh) / h, (std::fabs(t) + std::fabs(kh)) / h);
  if (u == 0.0) return 1.0;
  return sinpi(u) / (std::numbers::pi * u);
}

double sinc_auto_step(SincVariant variant, int N, SincStepRule rule) {
  if (N < 1) throw ParameterError("automatic step size needs N >= 1");
  if (!(rule.d > 0.0) || !(rule.alpha > 0.0))
    throw ParameterError("step rule constants must be > 0");
  if (variant == SincVariant::SE) return std::sqrt(std::numbers::pi * rule.d / (rule.alpha * N));
  return std::log(2.0 * rule.d * N / rule.alpha) / N;
}

namespace detail {

SincApproximant build_approximant(const std::function<double(double, double, double)>& f,
                                  SincVariant variant, int N, std::optional<double> h,
                                  SincStepRule rule) {
  if (N < 0) throw ParameterError("Sinc half-width N must be >= 0");
  SincApproximant a;
  a.transform = sinc_transform(variant);
  a.h = h ? *h : sinc_auto_step(variant, N, rule);
  if (!(a.h > 0.0) || !std::isfinite(a.h)) throw ParameterError("Sinc step h must be > 0");
  a.N = N;
  a.samples.resize(2 * static_cast<std::size_t>(N) + 1);
  for (long k = -N; k <= N; ++k) {
    const NodePoint n = node(a.transform, static_cast<double>(k) * a.h);
    const double v = f(n.x, n.left_offset, n.right_offset);
    if (!std::isfinite(v)) throw IntegrandNonFinite(k, n.x);
    a.samples[static_cast<std::size_t>(k + N)] = v;
  }
  return a;
}

}  // namespace detail

double evaluate_at_t(const SincApproximant& a, double t) {
  CompensatedSum acc;
  const auto sample = [&](long k) { return a.samples[static_cast<std::size_t>(k + a.N)]; };
  acc += sample(0) * sinc_kernel(0, a.h, t);
  for (long k = 1; k <= a.N; ++k) {
    acc += sample(k) * sinc_kernel(k, a.h, t);
    acc += sample(-k) * sinc_kernel(-k, a.h, t);
  }
  return acc.value();
}

double evaluate(const SincApproximant& a, double x) {
  if (std::isnan(x) || !(x > 0.0 && x < 1.0))
    throw DomainError("Sinc approximant is defined on the open interval (0, 1)");
  const double t = inverse_map(a.transform, x);
  // Recover exact node parameters: the round trip through phi^{-1} is only
  // accurate to a few ulps.
  const double j = std::nearbyint(t / a.h);
  if (std::fabs(j) <= a.N && a.node_abscissa(static_cast<long>(j)) == x)
    return a.samples[static_cast<std::size_t>(static_cast<long>(j) + a.N)];
  return evaluate_at_t(a, t);
}

double sup_error(const SincApproximant& a, const std::function<double(double)>& f,
                 int grid_points) {
  return dense_sup_error([&](double x) { return evaluate(a, x); }, f, grid_points);
}

// ---------------------------------------------------------------------------
// Chebyshev

ChebyshevInterpolant chebyshev_interpolant(const std::function<double(double)>& f, int N) {
  if (N < 0) throw ParameterError("Chebyshev degree must be >= 0");
  ChebyshevInterpolant c;
  c.degree = N;
  const auto count = static_cast<std::size_t>(N) + 1;
  c.nodes.resize(count);
  c.values.resize(count);
  c.weights.resize(count);
  for (std::size_t j = 0; j < count; ++j) {
    const double theta = (2.0 * j + 1.0) * std::numbers::pi / (2.0 * count);
    c.nodes[j] = 0.5 + 0.5 * std::cos(theta);
    c.weights[j] = (j % 2 == 0 ? 1.0 : -1.0) * std::sin(theta);
    c.values[j] = f(c.nodes[j]);
    if (!std::isfinite(c.values[j])) throw IntegrandNonFinite(static_cast<long>(j), c.nodes[j]);
  }
  return c;
}

double chebyshev_evaluate(const ChebyshevInterpolant& c, double x) {
  if (std::isnan(x) || x < 0.0 || x > 1.0)
    throw DomainError("Chebyshev interpolant is defined on [0, 1]");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < c.nodes.size(); ++j) {
    const double diff = x - c.nodes[j];
    if (diff == 0.0) return c.values[j];
    const double w = c.weights[j] / diff;
    num += w * c.values[j];
    den += w;
  }
  return num / den;
}

double sup_error(const ChebyshevInterpolant& c, const std::function<double(double)>& f,
                 int grid_points) {
  return dense_sup_error([&](double x) { return chebyshev_evaluate(c, x); }, f, grid_points);
}

}  // namespace dequad
