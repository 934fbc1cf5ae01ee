#include <dequad/transforms.hpp>

#include <dequad/error.hpp>

#include "imt_detail.hpp"

#include <cmath>
#include <limits>

namespace dequad {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double two_over_sqrt_pi = std::numbers::inv_sqrtpi * 2.0;

// Below this |t| the Ooura maps switch to their Taylor expansion; the direct
// formula for phi' cancels there.
constexpr double ooura_taylor_radius = 1e-4;

void require_not_nan(double t) {
  if (std::isnan(t)) throw NonFiniteInput("transform parameter t is NaN");
}

// Endpoint data for tanh(s) on (-1, 1): sech^2(s) and 1 - tanh|s|, both
// written in e = exp(-2|s|) so that neither overflows nor cancels.
struct TanhParts {
  double x;
  double sech2;
  double near;  // distance from x to the closer endpoint
};

TanhParts tanh_parts(double s) {
  const double e = std::exp(-2.0 * std::fabs(s));
  const double onep = 1.0 + e;
  return {std::tanh(s), 4.0 * e / (onep * onep), 2.0 * e / onep};
}

// Offsets on (-1, 1) given the distance to the nearer end. The far offset
// is width - near, which cannot cancel since near <= 1.
void set_symmetric_offsets(NodePoint& n, double s, double near, double width) {
  const double far = width - near;
  if (s >= 0) {
    n.right_offset = near;
    n.left_offset = far;
  } else {
    n.left_offset = near;
    n.right_offset = far;
  }
}

NodePoint tanh_family_node(double t, double s, double ds_dt) {
  NodePoint n;
  n.t = t;
  const TanhParts p = tanh_parts(s);
  n.x = p.x;
  n.weight = p.sech2 == 0.0 ? 0.0 : ds_dt * p.sech2;
  set_symmetric_offsets(n, s, p.near, 2.0);
  return n;
}

// (0, 1) logistic-type maps: x = 1/(1 + exp(-2s)) = tanh(s)/2 + 1/2.
NodePoint unit_tanh_node(double t, double s, double ds_dt) {
  NodePoint n;
  n.t = t;
  const double e = std::exp(-2.0 * std::fabs(s));
  const double onep = 1.0 + e;
  const double near = e / onep;
  const double dxds = 2.0 * e / (onep * onep);
  n.weight = dxds == 0.0 ? 0.0 : ds_dt * dxds;
  set_symmetric_offsets(n, s, near, 1.0);
  n.x = n.left_offset;
  return n;
}

// G(q) = 1/(1 - exp(-q)) and G'(q), together with G(q) - 1, in forms that
// are accurate for either sign of q.
struct OouraKernel {
  double g;
  double dg;
  double g_minus_one;
  bool left_underflow;   // exp(q) == 0: phi and phi' have underflowed
  bool right_saturated;  // exp(-q) == 0: phi(t) == t to working precision
};

OouraKernel ooura_kernel(double q) {
  OouraKernel k{};
  if (q >= 0.0) {
    const double e = std::exp(-q);
    const double em = std::expm1(-q);
    k.g = -1.0 / em;
    k.dg = -e / (em * em);
    k.g_minus_one = -e / em;
    k.right_saturated = e == 0.0;
  } else {
    const double f = std::exp(q);
    const double em = std::expm1(q);
    k.g = f / em;
    k.dg = -f / (em * em);
    k.g_minus_one = 1.0 / em;
    k.left_underflow = f == 0.0;
  }
  return k;
}

// Taylor coefficients c0..c3 of phi around t = 0 (c4 for the original map,
// whose c3 vanishes).
struct OouraSeries {
  double c0, c1, c2, c3, c4;
};

OouraSeries ooura_series(const Transform& tr) {
  if (tr.kind() == TransformKind::OouraOriginal) {
    const double k = tr.K();
    return {1.0 / k, 0.5, k / 12.0 - 1.0 / (6.0 * k), 0.0,
            (14.0 + 10.0 * k * k - k * k * k * k) / (720.0 * k)};
  }
  const double a = tr.alpha();
  const double b = tr.beta();
  const double p = a + b + 2.0;
  const double a2 = a * a, b2 = b * b, a3 = a2 * a, b3 = b2 * b, a4 = a2 * a2, b4 = b2 * b2;
  const double c1 = (a2 + 2 * a * b + 5 * a + b2 + 3 * b + 4) / (2 * p * p);
  const double c2 = (a4 + 4 * a3 * b + 8 * a3 + 6 * a2 * b2 + 24 * a2 * b + 25 * a2 +
                     4 * a * b3 + 24 * a * b2 + 38 * a * b + 28 * a + b4 + 8 * b3 +
                     25 * b2 + 28 * b + 16) /
                    (12 * p * p * p);
  const double c3 = -(a - b) *
                    (a4 + 4 * a3 * b + 8 * a3 + 6 * a2 * b2 + 24 * a2 * b + 24 * a2 +
                     4 * a * b3 + 24 * a * b2 + 60 * a * b + 36 * a + b4 + 8 * b3 +
                     24 * b2 + 36 * b + 12) /
                    (24 * p * p * p * p);
  return {1.0 / p, c1, c2, c3, 0.0};
}

NodePoint imt_node(double t) {
  if (std::isnan(t)) throw NonFiniteInput("transform parameter t is NaN");
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("IMT parameter must lie in [0, 1]");
  NodePoint n;
  n.t = t;
  n.weight = derivative(Transform::imt(), t);
  // phi(1 - t) = 1 - phi(t): each offset is a lower-half cumulative integral.
  n.left_offset = detail::imt_cumulative(t);
  n.right_offset = detail::imt_cumulative(1.0 - t);
  n.x = t <= 0.5 ? n.left_offset : 1.0 - n.right_offset;
  return n;
}

NodePoint infinite_t_node(const Transform& tr, double t) {
  NodePoint n;
  n.t = t;
  n.weight = 0.0;
  const Interval& iv = tr.target();
  if (t > 0) {
    n.x = iv.upper();
    n.right_offset = 0.0;
    n.left_offset = iv.width();
  } else {
    n.x = iv.lower();
    n.left_offset = 0.0;
    n.right_offset = iv.width();
  }
  return n;
}

}  // namespace

// ---------------------------------------------------------------------------
// Transform

Transform Transform::tanh_sinh() noexcept {
  return {TransformKind::TanhSinh, Interval::finite(-1.0, 1.0), DecayClass::DoubleExponential};
}
Transform Transform::exp_sinh() noexcept {
  return {TransformKind::ExpSinh, Interval::half_line(), DecayClass::DoubleExponential};
}
Transform Transform::sinh_sinh() noexcept {
  return {TransformKind::SinhSinh, Interval::real_line(), DecayClass::DoubleExponential};
}
Transform Transform::tanh() noexcept {
  return {TransformKind::Tanh, Interval::finite(-1.0, 1.0), DecayClass::SingleExponential};
}
Transform Transform::tanh_sinh_cubed() noexcept {
  return {TransformKind::TanhSinhCubed, Interval::finite(-1.0, 1.0),
          DecayClass::DoubleExponential};
}
Transform Transform::erf() noexcept {
  return {TransformKind::Erf, Interval::finite(-1.0, 1.0), DecayClass::Gaussian};
}
Transform Transform::imt() {
  Transform tr{TransformKind::IMT, Interval::finite(0.0, 1.0), DecayClass::IMTClass};
  tr.q_ = imt_normalizer();
  return tr;
}
Transform Transform::se_sinc_map() noexcept {
  return {TransformKind::SESincMap, Interval::finite(0.0, 1.0), DecayClass::SingleExponential};
}
Transform Transform::de_sinc_map() noexcept {
  return {TransformKind::DESincMap, Interval::finite(0.0, 1.0), DecayClass::DoubleExponential};
}
Transform Transform::ooura_original(double K) {
  if (!(K > 0.0) || !std::isfinite(K)) throw ParameterError("Ooura-Mori K must be positive");
  Transform tr{TransformKind::OouraOriginal, Interval::half_line(), DecayClass::OouraClass};
  tr.k_ = K;
  return tr;
}
Transform Transform::ooura_improved(double M) {
  if (!(M > 0.0) || !std::isfinite(M)) throw ParameterError("Ooura-Mori M must be positive");
  Transform tr{TransformKind::OouraImproved, Interval::half_line(), DecayClass::OouraClass};
  tr.m_ = M;
  tr.beta_ = 0.25;
  tr.alpha_ = tr.beta_ / std::sqrt(1.0 + M * std::log1p(M) / (4.0 * std::numbers::pi));
  return tr;
}

std::string_view Transform::name() const noexcept {
  switch (kind_) {
    case TransformKind::TanhSinh: return "tanh-sinh";
    case TransformKind::ExpSinh: return "exp-sinh";
    case TransformKind::SinhSinh: return "sinh-sinh";
    case TransformKind::Tanh: return "tanh";
    case TransformKind::TanhSinhCubed: return "tanh-sinh-cubed";
    case TransformKind::Erf: return "erf";
    case TransformKind::IMT: return "imt";
    case TransformKind::SESincMap: return "se-sinc";
    case TransformKind::DESincMap: return "de-sinc";
    case TransformKind::OouraOriginal: return "ooura-original";
    case TransformKind::OouraImproved: return "ooura";
  }
  return "unknown";
}

double Transform::t_lower() const noexcept { return kind_ == TransformKind::IMT ? 0.0 : -inf; }
double Transform::t_upper() const noexcept { return kind_ == TransformKind::IMT ? 1.0 : inf; }

bool NodePoint::usable() const noexcept {
  return std::isfinite(x) && std::isfinite(weight) && left_offset > 0.0 && right_offset > 0.0;
}

// ---------------------------------------------------------------------------
// Evaluation

NodePoint node(const Transform& tr, double t) {
  if (tr.kind() == TransformKind::IMT) return imt_node(t);
  require_not_nan(t);
  if (std::isinf(t)) return infinite_t_node(tr, t);

  switch (tr.kind()) {
    case TransformKind::TanhSinh:
      return tanh_family_node(t, half_pi * std::sinh(t), half_pi * std::cosh(t));
    case TransformKind::Tanh:
      return tanh_family_node(t, t, 1.0);
    case TransformKind::TanhSinhCubed: {
      const double u = t * t * t;
      return tanh_family_node(t, half_pi * std::sinh(u), half_pi * std::cosh(u) * 3.0 * t * t);
    }
    case TransformKind::Erf: {
      NodePoint n;
      n.t = t;
      n.x = std::erf(t);
      n.weight = two_over_sqrt_pi * std::exp(-t * t);
      set_symmetric_offsets(n, t, std::erfc(std::fabs(t)), 2.0);
      return n;
    }
    case TransformKind::SESincMap:
      return unit_tanh_node(t, 0.5 * t, 0.5);
    case TransformKind::DESincMap:
      return unit_tanh_node(t, half_pi * std::sinh(t), half_pi * std::cosh(t));
    case TransformKind::ExpSinh: {
      NodePoint n;
      n.t = t;
      n.x = std::exp(half_pi * std::sinh(t));
      n.weight = n.x == 0.0 ? 0.0 : half_pi * std::cosh(t) * n.x;
      n.left_offset = n.x;
      n.right_offset = inf;
      return n;
    }
    case TransformKind::SinhSinh: {
      NodePoint n;
      n.t = t;
      const double s = half_pi * std::sinh(t);
      n.x = std::sinh(s);
      n.weight = half_pi * std::cosh(t) * std::cosh(s);
      n.left_offset = inf;
      n.right_offset = inf;
      return n;
    }
    case TransformKind::OouraOriginal:
    case TransformKind::OouraImproved: {
      const OouraPoint p = ooura_map(tr, t);
      NodePoint n;
      n.t = t;
      n.x = p.x;
      n.weight = p.dx;
      n.left_offset = p.x;
      n.right_offset = inf;
      return n;
    }
    case TransformKind::IMT:
      break;
  }
  throw Unsupported("unknown transform");
}

double map(const Transform& tr, double t) {
  if (tr.kind() == TransformKind::IMT) {
    require_not_nan(t);
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("IMT parameter must lie in [0, 1]");
    return detail::imt_cumulative(t);
  }
  return node(tr, t).x;
}

double derivative(const Transform& tr, double t) {
  require_not_nan(t);
  if (tr.kind() == TransformKind::IMT) {
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("IMT parameter must lie in [0, 1]");
    if (t == 0.0 || t == 1.0) return 0.0;
    return std::exp(-(1.0 / t + 1.0 / (1.0 - t))) / tr.Q();
  }
  if (std::isinf(t)) throw NonFiniteInput("derivative needs finite t");
  return node(tr, t).weight;
}

double inverse_map(const Transform& tr, double x) {
  if (std::isnan(x)) throw NonFiniteInput("inverse_map argument is NaN");
  switch (tr.kind()) {
    case TransformKind::TanhSinh:
    case TransformKind::Tanh:
    case TransformKind::SESincMap:
    case TransformKind::DESincMap:
    case TransformKind::ExpSinh:
    case TransformKind::SinhSinh:
      break;
    default:
      throw Unsupported(std::string("no closed-form inverse for ") + std::string(tr.name()));
  }
  if (!tr.target().contains(x)) throw DomainError("inverse_map argument outside the open target");

  switch (tr.kind()) {
    case TransformKind::TanhSinh: return std::asinh(std::atanh(x) / half_pi);
    case TransformKind::Tanh: return std::atanh(x);
    case TransformKind::SESincMap: return std::log(x) - std::log1p(-x);
    case TransformKind::DESincMap:
      return std::asinh(0.5 * (std::log(x) - std::log1p(-x)) / half_pi);
    case TransformKind::ExpSinh: return std::asinh(std::log(x) / half_pi);
    case TransformKind::SinhSinh: return std::asinh(std::asinh(x) / half_pi);
    default: break;
  }
  throw Unsupported("no closed-form inverse");
}

OouraPoint ooura_map(const Transform& tr, double t) {
  if (!tr.is_ooura()) throw Unsupported("ooura_map needs an Ooura-Mori transform");
  if (!std::isfinite(t)) throw NonFiniteInput("ooura_map needs finite t");

  if (std::fabs(t) < ooura_taylor_radius) {
    const OouraSeries c = ooura_series(tr);
    const double x = c.c0 + t * (c.c1 + t * (c.c2 + t * (c.c3 + t * c.c4)));
    const double dx = c.c1 + t * (2.0 * c.c2 + t * (3.0 * c.c3 + t * 4.0 * c.c4));
    return {x, dx, x - t};
  }

  double q = 0.0;
  double dq = 0.0;
  if (tr.kind() == TransformKind::OouraOriginal) {
    q = tr.K() * std::sinh(t);
    dq = tr.K() * std::cosh(t);
  } else {
    q = 2.0 * t - tr.alpha() * std::expm1(-t) + tr.beta() * std::expm1(t);
    dq = 2.0 + tr.alpha() * std::exp(-t) + tr.beta() * std::exp(t);
  }

  const OouraKernel k = ooura_kernel(q);
  if (k.left_underflow) return {0.0, 0.0, -t};
  if (k.right_saturated) return {t, 1.0, 0.0};
  return {t * k.g, k.g + t * dq * k.dg, t * k.g_minus_one};
}

}  // namespace dequad
