#include <dequad/bench.hpp>
#include <dequad/error.hpp>
#include <dequad/sinc.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace dequad::bench {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

ExperimentRecord row(std::string method, int N, long evals, double h, double abs_error,
                     double value) {
  ExperimentRecord r;
  r.method = std::move(method);
  r.N = N;
  r.evals = evals;
  r.h = h;
  r.abs_error = abs_error;
  r.value = value;
  return r;
}

ExperimentRecord flagged_record(std::string method, int N, const std::exception& e) {
  ExperimentRecord r;
  r.method = std::move(method);
  r.N = N;
  r.value = nan;
  r.abs_error = nan;
  r.flagged = true;
  r.note = e.what();
  return r;
}

// Exponent of the truncation error at |t| = T for an endpoint exponent mu.
double truncation_exponent(Fig1Method m, double T) {
  constexpr double mu = fig1_endpoint_exponent;
  switch (m) {
    case Fig1Method::TanhSinh: return 0.5 * std::numbers::pi * mu * std::exp(T);
    case Fig1Method::Tanh: return 2.0 * mu * T;
    case Fig1Method::Erf: return mu * T * T;
    case Fig1Method::TanhSinhCubed: return 0.5 * std::numbers::pi * mu * std::exp(T * T * T);
    case Fig1Method::IMT: break;
  }
  throw std::logic_error("no truncation exponent for the IMT rule");
}

Transform fig1_transform(Fig1Method m) {
  switch (m) {
    case Fig1Method::TanhSinh: return Transform::tanh_sinh();
    case Fig1Method::Tanh: return Transform::tanh();
    case Fig1Method::TanhSinhCubed: return Transform::tanh_sinh_cubed();
    case Fig1Method::Erf: return Transform::erf();
    case Fig1Method::IMT: return Transform::imt();
  }
  return Transform::tanh_sinh();
}

const std::vector<int> baseline_N = {50, 100, 200, 400};

}  // namespace

bool same_fields(const ExperimentRecord& a, const ExperimentRecord& b) noexcept {
  const auto same = [](double x, double y) {
    if (std::isnan(x) || std::isnan(y)) return std::isnan(x) && std::isnan(y);
    return std::signbit(x) == std::signbit(y) && x == y;
  };
  return a.method == b.method && a.N == b.N && a.evals == b.evals && same(a.h, b.h) &&
         same(a.abs_error, b.abs_error) && same(a.value, b.value);
}

std::string_view to_string(Fig1Method m) noexcept {
  switch (m) {
    case Fig1Method::TanhSinh: return "tanh-sinh";
    case Fig1Method::Tanh: return "tanh";
    case Fig1Method::TanhSinhCubed: return "tanh-sinh-cubed";
    case Fig1Method::Erf: return "erf";
    case Fig1Method::IMT: return "imt";
  }
  return "?";
}

Fig1Method parse_fig1_method(std::string_view name) {
  for (const Fig1Method m : all_fig1_methods())
    if (to_string(m) == name) return m;
  throw std::invalid_argument("unknown method: " + std::string(name));
}

std::vector<Fig1Method> all_fig1_methods() {
  return {Fig1Method::TanhSinh, Fig1Method::Tanh, Fig1Method::TanhSinhCubed, Fig1Method::Erf,
          Fig1Method::IMT};
}

double fig1_step(Fig1Method method, int N) {
  if (N < 0) throw ParameterError("N must be >= 0");
  if (method == Fig1Method::IMT) return 1.0 / (2.0 * N + 2.0);
  if (N == 0) return 1.0;
  // trunc(T) grows and 2 pi d N / T falls, so the crossing is unique.
  const double target = std::numbers::pi * fig1_strip_width * N;
  double lo = 0.0;
  double hi = 1.0;
  while (truncation_exponent(method, hi) < target / hi) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (truncation_exponent(method, mid) < target / mid) lo = mid;
    else hi = mid;
  }
  return hi / N;
}

std::vector<ExperimentRecord> run_fig1(const std::vector<int>& N_list,
                                       const std::vector<Fig1Method>& methods,
                                       double reference) {
  const Interval domain = Interval::finite(-1.0, 1.0);
  std::vector<ExperimentRecord> out;
  for (const Fig1Method m : methods) {
    for (const int N : N_list) {
      const std::string name(to_string(m));
      try {
        const double h = fig1_step(m, N);
        QuadratureResult res;
        if (m == Fig1Method::IMT) {
          res = integrate_imt(fig1_integrand, GridSpec{h, N}, domain);
        } else {
          res = integrate(fig1_integrand, domain, QuadratureOptions::fixed({h, N}),
                          fig1_transform(m));
        }
        out.push_back(row(name, N, res.evals, h, std::fabs(res.value - reference), res.value));
      } catch (const std::exception& e) {
        out.push_back(flagged_record(name, N, e));
      }
    }
  }
  sort_records(out);
  return out;
}

std::vector<ExperimentRecord> run_fig2(const std::vector<int>& N_list) {
  const std::function<double(double)> f = [](double x) { return fig2_function(x); };
  const auto f3 = [](double x, double l, double r) { return fig2_function(x, l, r); };
  std::vector<ExperimentRecord> out;
  for (const int N : N_list) {
    for (const SincVariant v : {SincVariant::SE, SincVariant::DE}) {
      const std::string name = v == SincVariant::SE ? "se-sinc" : "de-sinc";
      try {
        const SincApproximant a = build_approximant(f3, v, N);
        out.push_back(row(name, N, 2L * N + 1, a.h, sup_error(a, f, fig2_grid_points),
                       evaluate(a, fig2_probe)));
      } catch (const std::exception& e) {
        out.push_back(flagged_record(name, N, e));
      }
    }
    try {
      const ChebyshevInterpolant c = chebyshev_interpolant(f, N);
      out.push_back(row("chebyshev", N, N + 1L, 0.0, sup_error(c, f, fig2_grid_points),
                     chebyshev_evaluate(c, fig2_probe)));
    } catch (const std::exception& e) {
      out.push_back(flagged_record("chebyshev", N, e));
    }
  }
  sort_records(out);
  return out;
}

double exp_sinh_baseline_step(int N) {
  if (N < 1) throw ParameterError("N must be >= 1");
  return std::log(4.0 * fig1_strip_width * N) / N;
}

std::vector<ExperimentRecord> run_fourier(const std::vector<std::string>& problem_ids,
                                          const std::vector<int>& M_list,
                                          const ReferenceTable& table) {
  std::vector<ExperimentRecord> out;
  if (M_list.empty()) return out;
  for (const std::string& id : problem_ids) {
    const TestProblem p = problem(id, table);
    if (p.kind != ProblemKind::Fourier)
      throw std::invalid_argument(id + " is not a Fourier problem");
    const std::function<double(double)> f1 = [&p](double x) {
      return p.f(x, x, std::numeric_limits<double>::infinity());
    };
    const double ref = p.reference.value;

    for (const int M : M_list) {
      const std::string name = id + "/ooura";
      try {
        const FourierTruncation tr = fourier_truncation(M);
        const QuadratureResult res = integrate_fourier_sin(f1, M, tr.N_minus, tr.N_plus);
        out.push_back(row(name, M, res.evals, res.grid.h, std::fabs(res.value - ref), res.value));
      } catch (const std::exception& e) {
        out.push_back(flagged_record(name, M, e));
      }
    }

    for (const int N : baseline_N) {
      const std::string name = id + "/exp-sinh";
      try {
        const double h = exp_sinh_baseline_step(N);
        const QuadratureResult res =
            integrate(p.oscillatory, Interval::half_line(),
                      QuadratureOptions::fixed({h, N}), Transform::exp_sinh());
        out.push_back(row(name, N, res.evals, h, std::fabs(res.value - ref), res.value));
      } catch (const std::exception& e) {
        out.push_back(flagged_record(name, N, e));
      }
    }
  }
  sort_records(out);
  return out;
}

void sort_records(std::vector<ExperimentRecord>& records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const ExperimentRecord& a, const ExperimentRecord& b) {
                     if (a.method != b.method) return a.method < b.method;
                     return a.N < b.N;
                   });
}

}  // namespace dequad::bench
