#pragma once

#include <dequad/interval.hpp>
#include <dequad/transforms.hpp>

#include <concepts>
#include <functional>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace dequad {

// Integrands are called either as f(x) or as f(x, left_offset, right_offset),
// where the offsets are x - a and b - x computed without cancellation (an
// infinite end gives +inf). Endpoint-singular integrands should use the
// offsets: near the ends x may have rounded onto a or b.
using OffsetIntegrand = std::function<double(double, double, double)>;

template <class F>
concept PlainIntegrand = std::is_invocable_r_v<double, F, double>;

template <class F>
concept OffsetAwareIntegrand = std::is_invocable_r_v<double, F, double, double, double>;

template <class F>
concept IntegrandFunction = PlainIntegrand<F> || OffsetAwareIntegrand<F>;

template <IntegrandFunction F>
OffsetIntegrand as_offset_integrand(F&& f) {
  if constexpr (OffsetAwareIntegrand<F>) {
    return OffsetIntegrand(std::forward<F>(f));
  } else {
    return [g = std::forward<F>(f)](double x, double, double) { return g(x); };
  }
}

// Trapezoid grid: step h, terms k = -N..N.
struct GridSpec {
  double h = 1.0;
  int N = 0;

  void validate() const;  // throws ParameterError
  long nodes() const noexcept { return 2L * N + 1; }
};

struct FixedGrid {
  GridSpec grid;
};

// Level doubling from h = 1: level L uses h = 2^-L and evaluates only the
// new odd-indexed nodes. Stops when |I_h - I_{h/2}| <= max(abs_tol, rel_tol |I_{h/2}|).
struct Adaptive {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_level = 8;
};

inline constexpr int max_adaptive_level = 12;

struct QuadratureOptions {
  std::variant<FixedGrid, Adaptive> mode = Adaptive{};
  // A tail stops after 3 consecutive terms with |term| <= term_cutoff * |sum|.
  double term_cutoff = 1e-18;

  static QuadratureOptions fixed(GridSpec grid) { return {FixedGrid{grid}}; }
  static QuadratureOptions adaptive(double abs_tol, double rel_tol, int max_level = 8) {
    return {Adaptive{abs_tol, rel_tol, max_level}};
  }

  void validate() const;  // throws ParameterError
};

struct LevelRecord {
  int level = 0;
  double h = 0.0;
  double value = 0.0;
  long evals = 0;  // integrand calls made at this level
};

struct QuadratureResult {
  double value = 0.0;
  // |I_h - I_{h/2}| for the last two levels. A heuristic, not a bound.
  double error_estimate = 0.0;
  // False when only a single grid was summed; error_estimate is then 0.
  bool error_estimated = false;
  long evals = 0;
  GridSpec grid;  // final step, and the largest |k| summed at that step
  std::vector<LevelRecord> history;
};

namespace detail {

double trapezoid_sum(const OffsetIntegrand& f, const Transform& tr, GridSpec grid, long* evals);
QuadratureResult integrate(const OffsetIntegrand& f, const Interval& interval,
                           const QuadratureOptions& options, const Transform& tr);
QuadratureResult integrate_imt(const OffsetIntegrand& f, GridSpec grid, const Interval& interval);

}  // namespace detail

// Transform chosen by integrate() for each kind of domain: tanh-sinh for a
// finite interval (affinely rescaled), exp-sinh for the half line and
// sinh-sinh for the real line.
Transform default_transform(const Interval& interval);

// h * sum_{k=-N}^{N} f(phi(kh)) phi'(kh) on the transform's own target,
// compensated and summed in the order k = 0, +1, -1, +2, -2, ...
// Nodes beyond the representable range (x rounded onto an endpoint with a
// zero offset, or overflowed) contribute nothing and are not evaluated.
// Throws IntegrandNonFinite if f is NaN/inf at a usable node.
template <IntegrandFunction F>
double trapezoid_sum(F&& f, const Transform& tr, GridSpec grid) {
  return detail::trapezoid_sum(as_offset_integrand(std::forward<F>(f)), tr, grid, nullptr);
}

// Integral of f over the interval using default_transform(interval).
// Adaptive mode throws NoConvergence when max_level is reached.
template <IntegrandFunction F>
QuadratureResult integrate(F&& f, const Interval& interval, const QuadratureOptions& options) {
  return detail::integrate(as_offset_integrand(std::forward<F>(f)), interval, options,
                           default_transform(interval));
}

// Same with an explicit transform. A transform with a finite target is
// composed with the affine map onto a finite interval, so the value equals
// (b - a) / (d - c) times the integral of the pulled-back integrand over the
// target (c, d). IMT and the Ooura-Mori maps have dedicated drivers and are
// rejected here (Unsupported).
template <IntegrandFunction F>
QuadratureResult integrate(F&& f, const Interval& interval, const QuadratureOptions& options,
                           const Transform& tr) {
  return detail::integrate(as_offset_integrand(std::forward<F>(f)), interval, options, tr);
}

// IMT rule on (0, 1), or affinely on a finite interval: trapezoid in t over
// t_k = k h, k = 1..ceil(1/h)-1. The endpoint terms vanish with phi' and are
// omitted. grid.N is ignored on input; the result reports the node count.
template <IntegrandFunction F>
QuadratureResult integrate_imt(F&& f, GridSpec grid,
                               const Interval& interval = Interval::finite(0.0, 1.0)) {
  return detail::integrate_imt(as_offset_integrand(std::forward<F>(f)), grid, interval);
}

// ---------------------------------------------------------------------------
// Fourier-type integrals int_0^inf f1(x) sin x dx (Ooura-Mori rule).

enum class FourierMap { Improved, Original };

struct FourierOptions {
  FourierMap map = FourierMap::Improved;
  double K = 6.0;  // Original map only
};

// With h = pi / M, returns M h sum_{k=-N_minus}^{N_plus}
// f1(M phi(kh)) sin(M phi(kh)) phi'(kh). For k > 0 the sine is evaluated
// as (-1)^k sin(M (phi(kh) - kh)), which stays accurate as M phi(kh)
// approaches k pi. error_estimate is the magnitude of the two outermost
// terms (a truncation proxy).
// Throws ParameterError if M <= 0 or a count is negative.
QuadratureResult integrate_fourier_sin(const std::function<double(double)>& f1, double M,
                                       int N_minus, int N_plus, FourierOptions options = {});

// Truncation counts at which M h |M phi'(-N_minus h)| and
// M h |M (phi(N_plus h) - N_plus h)| fall below cutoff. Depends on the map
// only; assumes |f1(x)| <= max(1, 1/x).
struct FourierTruncation {
  int N_minus = 0;
  int N_plus = 0;
};
FourierTruncation fourier_truncation(double M, FourierOptions options = {}, double cutoff = 1e-16);

}  // namespace dequad
