#include <dequad/quadrature.hpp>

#include <dequad/error.hpp>
#include <dequad/summation.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace dequad {

namespace {

// Hard stop for a tail walk; no usable transform needs this many nodes.
constexpr long max_tail_nodes = 1L << 22;

// Integrand pulled back to a transform's target through an affine map.
// Symmetric targets (-c, c) use x = mid + scale * u; other targets rebuild x
// from the nearer offset so that abscissae close to an end keep their
// relative accuracy.
class PulledBack {
 public:
  PulledBack(const OffsetIntegrand& f, const Interval& target, const Interval& domain)
      : f_(f) {
    if (domain.is_finite() && domain != target) {
      scale_ = domain.width() / target.width();
      lower_ = domain.lower();
      upper_ = domain.upper();
      origin_ = 0.5 * (lower_ + upper_);
      symmetric_ = target.lower() == -target.upper();
      affine_ = true;
    }
  }

  double scale() const noexcept { return scale_; }

  double operator()(const NodePoint& n) const {
    if (!affine_) return f_(n.x, n.left_offset, n.right_offset);
    return f_(abscissa(n), scale_ * n.left_offset, scale_ * n.right_offset);
  }

  double abscissa(const NodePoint& n) const noexcept {
    if (!affine_) return n.x;
    if (symmetric_) return origin_ + scale_ * n.x;
    return n.left_offset <= n.right_offset ? lower_ + scale_ * n.left_offset
                                           : upper_ - scale_ * n.right_offset;
  }

 private:
  const OffsetIntegrand& f_;
  double scale_ = 1.0;
  double lower_ = 0.0;
  double upper_ = 0.0;
  double origin_ = 0.0;
  bool symmetric_ = false;
  bool affine_ = false;
};

// Outcome of one trapezoid term.
enum class TermStatus { Ok, Unusable };

struct Term {
  TermStatus status = TermStatus::Ok;
  double value = 0.0;
};

Term evaluate_term(const PulledBack& g, const Transform& tr, long k, double t, long& evals) {
  const NodePoint n = node(tr, t);
  if (!n.usable()) return {TermStatus::Unusable, 0.0};
  if (n.weight == 0.0) return {TermStatus::Ok, 0.0};
  const double fx = g(n);
  ++evals;
  if (!std::isfinite(fx)) throw IntegrandNonFinite(k, g.abscissa(n));
  return {TermStatus::Ok, fx * n.weight};
}

// One tail of a level: stops at the first unusable node or after three
// consecutive negligible terms.
struct Side {
  bool active = true;
  int tiny_run = 0;
  long reach = 0;

  void feed(const Term& term, long j, const CompensatedSum& acc, double cutoff) {
    if (term.status == TermStatus::Unusable) {
      active = false;
      return;
    }
    reach = j;
    if (std::fabs(term.value) <= cutoff * std::fabs(acc.value())) {
      if (++tiny_run >= 3) active = false;
    } else {
      tiny_run = 0;
    }
  }
};

void require_integrable_transform(const Transform& tr) {
  if (tr.kind() == TransformKind::IMT)
    throw Unsupported("the IMT map has its own driver (integrate_imt)");
  if (tr.is_ooura())
    throw Unsupported("Ooura-Mori maps have their own driver (integrate_fourier_sin)");
}

void require_compatible(const Transform& tr, const Interval& domain) {
  const Interval& target = tr.target();
  if (domain.is_finite()) {
    if (!target.is_finite())
      throw Unsupported(std::string(tr.name()) + " does not map onto a finite interval");
    return;
  }
  if (target != domain)
    throw Unsupported(std::string(tr.name()) + " does not map onto the requested domain");
}

double sum_fixed(const PulledBack& g, const Transform& tr, GridSpec grid, long& evals) {
  CompensatedSum acc;
  acc += evaluate_term(g, tr, 0, 0.0, evals).value;
  bool right = true;
  bool left = true;
  for (long j = 1; j <= grid.N && (right || left); ++j) {
    if (right) {
      const Term term = evaluate_term(g, tr, j, j * grid.h, evals);
      if (term.status == TermStatus::Unusable) right = false;
      else acc += term.value;
    }
    if (left) {
      const Term term = evaluate_term(g, tr, -j, -j * grid.h, evals);
      if (term.status == TermStatus::Unusable) left = false;
      else acc += term.value;
    }
  }
  return grid.h * acc.value();
}

QuadratureResult integrate_adaptive(const PulledBack& g, const Transform& tr,
                                    const Adaptive& mode, double cutoff) {
  QuadratureResult result;
  CompensatedSum acc;
  long evals = 0;
  double previous = 0.0;

  for (int level = 0; level <= mode.max_level; ++level) {
    const double h = std::ldexp(1.0, -level);
    const long level_start = evals;
    // Level 0 visits every integer; later levels only the odd multiples of h.
    const long stride = level == 0 ? 1 : 2;
    if (level == 0) acc += evaluate_term(g, tr, 0, 0.0, evals).value;

    Side right;
    Side left;
    for (long j = 1; (right.active || left.active) && j < max_tail_nodes; j += stride) {
      if (right.active) {
        const Term term = evaluate_term(g, tr, j, j * h, evals);
        if (term.status == TermStatus::Ok) acc += term.value;
        right.feed(term, j, acc, cutoff);
      }
      if (left.active) {
        const Term term = evaluate_term(g, tr, -j, -j * h, evals);
        if (term.status == TermStatus::Ok) acc += term.value;
        left.feed(term, j, acc, cutoff);
      }
    }

    const double value = g.scale() * (h * acc.value());
    result.history.push_back({level, h, value, evals - level_start});
    result.value = value;
    result.evals = evals;
    result.grid = {h, static_cast<int>(std::max(right.reach, left.reach))};

    if (level > 0) {
      result.error_estimate = std::fabs(value - previous);
      result.error_estimated = true;
      if (result.error_estimate <= std::max(mode.abs_tol, mode.rel_tol * std::fabs(value)))
        return result;
    }
    previous = value;
  }
  throw NoConvergence(result.value, result.error_estimate, result.evals);
}

}  // namespace

void GridSpec::validate() const {
  if (!(h > 0.0) || !std::isfinite(h)) throw ParameterError("grid step h must be finite and > 0");
  if (N < 0) throw ParameterError("grid half-width N must be >= 0");
}

void QuadratureOptions::validate() const {
  if (!(term_cutoff >= 0.0) || !std::isfinite(term_cutoff))
    throw ParameterError("term_cutoff must be finite and >= 0");
  if (const auto* fixed = std::get_if<FixedGrid>(&mode)) {
    fixed->grid.validate();
    return;
  }
  const auto& adaptive = std::get<Adaptive>(mode);
  if (!(adaptive.abs_tol > 0.0) || !(adaptive.rel_tol > 0.0))
    throw ParameterError("tolerances must be > 0");
  if (adaptive.max_level < 1 || adaptive.max_level > max_adaptive_level)
    throw ParameterError("max_level must lie in [1, 12]");
}

Transform default_transform(const Interval& interval) {
  switch (interval.kind()) {
    case Interval::Kind::Finite: return Transform::tanh_sinh();
    case Interval::Kind::HalfLine: return Transform::exp_sinh();
    case Interval::Kind::RealLine: return Transform::sinh_sinh();
  }
  return Transform::tanh_sinh();
}

namespace detail {

double trapezoid_sum(const OffsetIntegrand& f, const Transform& tr, GridSpec grid, long* evals) {
  grid.validate();
  require_integrable_transform(tr);
  long count = 0;
  const PulledBack g(f, tr.target(), tr.target());
  const double value = sum_fixed(g, tr, grid, count);
  if (evals) *evals = count;
  return value;
}

QuadratureResult integrate(const OffsetIntegrand& f, const Interval& interval,
                           const QuadratureOptions& options, const Transform& tr) {
  options.validate();
  require_integrable_transform(tr);
  require_compatible(tr, interval);
  const PulledBack g(f, tr.target(), interval);

  if (const auto* fixed = std::get_if<FixedGrid>(&options.mode)) {
    QuadratureResult result;
    long evals = 0;
    result.value = g.scale() * sum_fixed(g, tr, fixed->grid, evals);
    result.evals = evals;
    result.grid = fixed->grid;
    result.history.push_back({0, fixed->grid.h, result.value, evals});
    return result;
  }
  return integrate_adaptive(g, tr, std::get<Adaptive>(options.mode), options.term_cutoff);
}

QuadratureResult integrate_imt(const OffsetIntegrand& f, GridSpec grid, const Interval& interval) {
  if (!(grid.h > 0.0) || !(grid.h < 1.0)) throw ParameterError("IMT step must lie in (0, 1)");
  if (!interval.is_finite()) throw Unsupported("the IMT rule needs a finite interval");
  const Transform tr = Transform::imt();
  const PulledBack g(f, tr.target(), interval);

  const long count = static_cast<long>(std::ceil(1.0 / grid.h)) - 1;
  long evals = 0;
  CompensatedSum acc;
  // Centre-out order: centre, centre + 1, centre - 1, ...
  const long centre = (count + 1) / 2;
  auto add = [&](long k) {
    if (k < 1 || k > count) return;
    const Term term = evaluate_term(g, tr, k, k * grid.h, evals);
    if (term.status == TermStatus::Ok) acc += term.value;
  };
  add(centre);
  for (long d = 1; d <= count; ++d) {
    add(centre + d);
    add(centre - d);
  }

  QuadratureResult result;
  result.value = g.scale() * (grid.h * acc.value());
  result.evals = evals;
  result.grid = {grid.h, static_cast<int>(count)};
  result.history.push_back({0, grid.h, result.value, evals});
  return result;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Ooura-Mori

namespace {

Transform fourier_transform(double M, const FourierOptions& options) {
  if (!(M > 0.0) || !std::isfinite(M)) throw ParameterError("Fourier scale M must be > 0");
  return options.map == FourierMap::Improved ? Transform::ooura_improved(M)
                                             : Transform::ooura_original(options.K);
}

}  // namespace

QuadratureResult integrate_fourier_sin(const std::function<double(double)>& f1, double M,
                                       int N_minus, int N_plus, FourierOptions options) {
  const Transform tr = fourier_transform(M, options);
  if (N_minus < 0 || N_plus < 0) throw ParameterError("truncation counts must be >= 0");
  const double h = std::numbers::pi / M;

  long evals = 0;
  CompensatedSum acc;
  double edge_terms = 0.0;

  auto term_at = [&](long k) -> double {
    const double t = k * h;
    const OouraPoint p = ooura_map(tr, t);
    const double x = M * p.x;
    if (x == 0.0 || p.dx == 0.0 || !std::isfinite(x)) return 0.0;
    double s = 0.0;
    if (k > 0) {
      s = std::sin(M * p.x_minus_t);
      if (k % 2 != 0) s = -s;
    } else {
      s = std::sin(x);
    }
    const double fx = f1(x);
    ++evals;
    if (!std::isfinite(fx)) throw IntegrandNonFinite(k, x);
    return fx * s * p.dx;
  };

  acc += term_at(0);
  const int reach = std::max(N_minus, N_plus);
  for (long j = 1; j <= reach; ++j) {
    if (j <= N_plus) {
      const double v = term_at(j);
      acc += v;
      if (j == N_plus) edge_terms += std::fabs(v);
    }
    if (j <= N_minus) {
      const double v = term_at(-j);
      acc += v;
      if (j == N_minus) edge_terms += std::fabs(v);
    }
  }

  QuadratureResult result;
  result.value = M * h * acc.value();
  result.error_estimate = M * h * edge_terms;
  result.error_estimated = true;
  result.evals = evals;
  result.grid = {h, reach};
  result.history.push_back({0, h, result.value, evals});
  return result;
}

FourierTruncation fourier_truncation(double M, FourierOptions options, double cutoff) {
  const Transform tr = fourier_transform(M, options);
  if (!(cutoff > 0.0)) throw ParameterError("cutoff must be > 0");
  const double h = std::numbers::pi / M;
  const double scale = M * h * M;
  constexpr int limit = 1 << 16;

  FourierTruncation out;
  for (int n = 1; n < limit; ++n) {
    if (scale * std::fabs(ooura_map(tr, -n * h).dx) < cutoff) {
      out.N_minus = n;
      break;
    }
  }
  for (int n = 1; n < limit; ++n) {
    if (scale * std::fabs(ooura_map(tr, n * h).x_minus_t) < cutoff) {
      out.N_plus = n;
      break;
    }
  }
  return out;
}

}  // namespace dequad
