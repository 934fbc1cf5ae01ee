#pragma once

#include <dequad/transforms.hpp>

#include <functional>
#include <numbers>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

namespace dequad {

// S(k, h)(t) = sin(pi (t - kh) / h) / (pi (t - kh) / h).
//
// The argument u = (t - kh) / h is snapped to the nearest integer when it is
// within a few rounding units of t - kh, so the kernel is exactly 1 at its
// own node and exactly 0 at the other grid nodes. sinc_kernel(k, h, t) and
// sinc_kernel(0, h, t - k*h) compute the same u; only the snap window, which
// widens with |t| and |kh|, can differ.
double sinc_kernel(long k, double h, double t);

enum class SincVariant { SE, DE };

// Constants of the automatic step rules:
//   SE: h = sqrt(pi d / (alpha N))
//   DE: h = log(2 d N / alpha) / N
// d is the half-width of the strip of analyticity and alpha the Hoelder
// exponent of the target function at the ends of (0, 1).
struct SincStepRule {
  double d = std::numbers::pi / 2.0;
  double alpha = 0.5;
};

// Throws ParameterError for N < 1 or non-positive constants.
double sinc_auto_step(SincVariant variant, int N, SincStepRule rule = {});

// Sinc approximant of a function on (0, 1): samples[k + N] = f(phi(k h)).
struct SincApproximant {
  Transform transform = Transform::de_sinc_map();
  double h = 1.0;
  int N = 0;
  std::vector<double> samples;

  double node_abscissa(long k) const { return map(transform, static_cast<double>(k) * h); }
};

namespace detail {
SincApproximant build_approximant(const std::function<double(double, double, double)>& f,
                                  SincVariant variant, int N, std::optional<double> h,
                                  SincStepRule rule);
}

// Samples f at the 2N+1 mapped nodes. f may take (x) or (x, x, 1 - x) with
// the second and third arguments computed without cancellation. h defaults
// to sinc_auto_step(variant, N, rule). Throws IntegrandNonFinite for a
// non-finite sample and ParameterError for N < 0 or h <= 0.
template <class F>
SincApproximant build_approximant(F&& f, SincVariant variant, int N,
                                  std::optional<double> h = std::nullopt,
                                  SincStepRule rule = {}) {
  if constexpr (std::is_invocable_r_v<double, F, double, double, double>) {
    return detail::build_approximant(std::forward<F>(f), variant, N, h, rule);
  } else {
    return detail::build_approximant(
        [g = std::forward<F>(f)](double x, double, double) { return g(x); }, variant, N, h,
        rule);
  }
}

// sum_k samples[k] S(k, h)(phi^{-1}(x)). A stored node abscissa returns its
// sample exactly. Throws DomainError unless 0 < x < 1.
double evaluate(const SincApproximant& a, double x);

// Value at the transformed coordinate t directly.
double evaluate_at_t(const SincApproximant& a, double t);

// max |evaluate(a, x_i) - f(x_i)| over grid_points uniform points in
// [epsilon, 1 - epsilon].
inline constexpr double sup_error_margin = 1e-6;
double sup_error(const SincApproximant& a, const std::function<double(double)>& f,
                 int grid_points);

// ---------------------------------------------------------------------------
// Chebyshev baseline

// Degree-N interpolant on [0, 1] through the N + 1 Chebyshev points of the
// first kind, stored for the barycentric formula of the second form.
struct ChebyshevInterpolant {
  int degree = 0;
  std::vector<double> nodes;  // decreasing
  std::vector<double> values;
  std::vector<double> weights;
};

ChebyshevInterpolant chebyshev_interpolant(const std::function<double(double)>& f, int N);

// Throws DomainError outside [0, 1].
double chebyshev_evaluate(const ChebyshevInterpolant& c, double x);

double sup_error(const ChebyshevInterpolant& c, const std::function<double(double)>& f,
                 int grid_points);

}  // namespace dequad
