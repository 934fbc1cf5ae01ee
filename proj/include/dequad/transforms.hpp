#pragma once

#include <dequad/interval.hpp>

#include <numbers>
#include <string_view>

namespace dequad {

enum class TransformKind {
  TanhSinh,       // tanh((pi/2) sinh t)            on (-1, 1)
  ExpSinh,        // exp((pi/2) sinh t)             on (0, inf)
  SinhSinh,       // sinh((pi/2) sinh t)            on R
  Tanh,           // tanh t                         on (-1, 1)
  TanhSinhCubed,  // tanh((pi/2) sinh t^3)          on (-1, 1)
  Erf,            // erf t                          on (-1, 1)
  IMT,            // (1/Q) int_0^t exp(-1/s - 1/(1-s)) ds, t in [0, 1]
  SESincMap,      // tanh(t/2)/2 + 1/2              on (0, 1)
  DESincMap,      // tanh((pi/2) sinh t)/2 + 1/2    on (0, 1)
  OouraOriginal,  // t / (1 - exp(-K sinh t))       on (0, inf)
  OouraImproved,  // t / (1 - exp(-2t - a(1-e^-t) - b(e^t-1)))
};

// How fast phi'(t) vanishes at the ends of the parameter range.
enum class DecayClass {
  SingleExponential,  // exp(-c|t|)
  Gaussian,           // exp(-t^2), the erf map
  DoubleExponential,  // exp(-c exp|t|)
  IMTClass,           // all derivatives vanish at t = 0, 1
  OouraClass,         // double exponential on the left, phi(t) -> t on the right
};

// A fixed change of variables x = phi(t). Map-specific parameters are
// resolved at construction: K for the original Ooura-Mori map; M, alpha and
// beta for the improved one; the normalizer Q for IMT.
class Transform {
 public:
  static Transform tanh_sinh() noexcept;
  static Transform exp_sinh() noexcept;
  static Transform sinh_sinh() noexcept;
  static Transform tanh() noexcept;
  static Transform tanh_sinh_cubed() noexcept;
  static Transform erf() noexcept;
  static Transform imt();
  static Transform se_sinc_map() noexcept;
  static Transform de_sinc_map() noexcept;
  // Throws ParameterError unless K > 0.
  static Transform ooura_original(double K = 6.0);
  // beta = 1/4, alpha = beta / sqrt(1 + M log(1 + M) / (4 pi)).
  // Throws ParameterError unless M > 0.
  static Transform ooura_improved(double M);

  TransformKind kind() const noexcept { return kind_; }
  const Interval& target() const noexcept { return target_; }
  DecayClass decay() const noexcept { return decay_; }
  std::string_view name() const noexcept;

  double K() const noexcept { return k_; }
  double M() const noexcept { return m_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double Q() const noexcept { return q_; }

  // Parameter domain: [0, 1] for IMT, the extended real line otherwise.
  double t_lower() const noexcept;
  double t_upper() const noexcept;

  bool is_ooura() const noexcept {
    return kind_ == TransformKind::OouraOriginal || kind_ == TransformKind::OouraImproved;
  }

 private:
  Transform(TransformKind kind, Interval target, DecayClass decay) noexcept
      : kind_(kind), target_(target), decay_(decay) {}

  TransformKind kind_;
  Interval target_;
  DecayClass decay_;
  double k_ = 0.0;
  double m_ = 0.0;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  double q_ = 0.0;
};

// One abscissa of the transformed trapezoidal rule.
//
// left_offset = x - a and right_offset = b - x are evaluated from closed
// forms that never subtract x from an endpoint, so they stay positive and
// accurate where x itself has rounded onto a or b. An infinite end gives an
// infinite offset.
struct NodePoint {
  double t = 0.0;
  double x = 0.0;
  double weight = 0.0;
  double left_offset = 0.0;
  double right_offset = 0.0;

  // True when the node can be handed to an integrand: x finite and strictly
  // inside the target, weight finite.
  bool usable() const noexcept;
};

// phi(t). t = +-inf returns the limiting endpoint. Throws NonFiniteInput for
// NaN and DomainError for IMT outside [0, 1].
double map(const Transform& tr, double t);

// phi'(t). Throws as map(); infinite t is rejected.
double derivative(const Transform& tr, double t);

// x, phi'(t) and cancellation-free endpoint offsets at t.
NodePoint node(const Transform& tr, double t);

// phi^{-1}(x) for TanhSinh, ExpSinh, SinhSinh, Tanh, SESincMap, DESincMap.
// Throws DomainError unless x is strictly inside the target, Unsupported for
// the other maps.
double inverse_map(const Transform& tr, double x);

// Q = int_0^1 exp(-(1/s + 1/(1-s))) ds. Computed on first use with the
// library's own exp-sinh rule (after s = 1/w) and cached.
double imt_normalizer();

// Value, derivative and phi(t) - t of an Ooura-Mori map. phi(t) - t is
// evaluated without cancellation; it carries the tail of the Fourier rule,
// where M phi(kh) approaches k pi. Throws Unsupported for non-Ooura maps and
// NonFiniteInput for non-finite t.
struct OouraPoint {
  double x = 0.0;
  double dx = 0.0;
  double x_minus_t = 0.0;
};
OouraPoint ooura_map(const Transform& tr, double t);

inline constexpr double half_pi = std::numbers::pi / 2.0;

}  // namespace dequad
