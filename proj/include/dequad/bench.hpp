#pragma once

// Convergence studies: the tanh-sinh vs. other-transform comparison on an
// endpoint-singular integral, SE/DE-Sinc vs. Chebyshev approximation, and
// the Ooura-Mori Fourier rule against plain exp-sinh.

#include <dequad/interval.hpp>
#include <dequad/quadrature.hpp>

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace dequad::bench {

// One row of a convergence study. For Fourier rows N holds the scale M.
struct ExperimentRecord {
  std::string method;
  int N = 0;
  long evals = 0;
  double h = 0.0;
  double abs_error = 0.0;
  double value = 0.0;
  // Not part of the CSV: set when the run behind the row failed.
  bool flagged = false;
  std::string note;
};

bool same_fields(const ExperimentRecord& a, const ExperimentRecord& b) noexcept;

// ---------------------------------------------------------------------------
// Problems and references

enum class ProblemKind { Integral, Fourier, Approximation };
enum class Provenance { Analytic, DerivedOracle };

std::string_view to_string(Provenance p) noexcept;

struct Reference {
  double value = 0.0;
  Provenance provenance = Provenance::Analytic;
  // Closed form, or the oracle procedure that produced the value.
  std::string procedure;
  // For derived references: |oracle A - oracle B| observed at generation.
  double agreement = 0.0;
};

// Reference values of the derived problems, keyed by problem id.
using ReferenceTable = std::map<std::string, Reference>;

struct TestProblem {
  std::string id;
  ProblemKind kind = ProblemKind::Integral;
  Interval domain = Interval::finite(-1.0, 1.0);
  Reference reference;
  std::string description;
  // Integral problems: f(x, x - a, b - x). Fourier problems: f1(x), with the
  // integral taken against sin x. Approximation problems: f(x, x, 1 - x).
  OffsetIntegrand f;
  // Fourier problems only: f1(x) sin x written out, for rules that do not
  // know about the kernel.
  std::function<double(double)> oscillatory;
};

// Ids: const, arcsine, exp, gauss, fig1, imt-root, dirichlet, lorentz-sin,
// exp-sin, fig2. Derived references come from `table`; throws
// std::out_of_range for an unknown id or a derived problem missing from the
// table.
TestProblem problem(std::string_view id, const ReferenceTable& table);
std::vector<std::string> problem_ids();

// Singular integrand of the transform comparison,
// 1 / ((x - 2) (1 - x)^(1/4) (1 + x)^(3/4)) on (-1, 1), written in the
// endpoint offsets.
double fig1_integrand(double x, double left_offset, double right_offset);
// x^(1/2) (1 - x)^(3/4) on (0, 1).
double fig2_function(double x);
double fig2_function(double x, double left_offset, double right_offset);

ReferenceTable load_references(const std::string& path);
void save_references(const ReferenceTable& table, const std::string& path);
// Runs both oracles of every derived problem. Throws std::runtime_error if a
// pair disagrees by more than its acceptance threshold.
ReferenceTable regenerate_references();

// Path of the checked-in reference file.
std::string default_reference_path();

// ---------------------------------------------------------------------------
// Independent oracles (no DE transformation involved)

// Composite Gauss-Legendre after x = 1 - u^4 on [0, 1] and x = v^4 - 1 on
// [-1, 0], which removes both endpoint singularities of fig1_integrand.
double fig1_gauss_oracle(int panels = 64, int order = 20);

// int_0^inf f1(x) sin x dx: Gauss-Legendre on each half period up to
// X = periods * pi (periods even), plus the asymptotic tail
// f1(X) - f1''(X) + f1''''(X). f1 and its derivatives come from the caller.
struct FourierOracleInput {
  std::function<double(double)> f1;
  std::function<double(double)> f1_second;
  std::function<double(double)> f1_fourth;
};
double fourier_period_oracle(const FourierOracleInput& in, int periods = 400, int order = 20);

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights);

// ---------------------------------------------------------------------------
// Sweeps

enum class Fig1Method { TanhSinh, Tanh, TanhSinhCubed, Erf, IMT };

std::string_view to_string(Fig1Method m) noexcept;
Fig1Method parse_fig1_method(std::string_view name);  // throws std::invalid_argument
std::vector<Fig1Method> all_fig1_methods();

// A priori step for 2N+1 nodes. For the R-parameterized maps h = T/N where
// the truncation exponent of the map at T (endpoint exponent mu = 1/4)
// equals pi d / h with d = pi/2, half the discretization exponent, so the
// discretization error is the square of the truncation error and the curve
// follows the truncation law. IMT uses h = 1 / (2N + 2). N = 0 gives h = 1
// (IMT: 1/2).
double fig1_step(Fig1Method method, int N);

inline constexpr double fig1_strip_width = 1.5707963267948966;  // d
inline constexpr double fig1_endpoint_exponent = 0.25;          // mu

// One record per (method, N), sorted by method then N. A failed integration
// is recorded with flagged = true and NaN value/error.
std::vector<ExperimentRecord> run_fig1(const std::vector<int>& N_list,
                                       const std::vector<Fig1Method>& methods,
                                       double reference);

// Sup-errors of SE-Sinc, DE-Sinc (automatic steps) and the degree-N
// Chebyshev interpolant of fig2_function on a 10^4-point grid. `value` is
// the approximant at x = 0.37; Chebyshev rows carry h = 0 and N + 1 evals.
inline constexpr int fig2_grid_points = 10000;
inline constexpr double fig2_probe = 0.37;
std::vector<ExperimentRecord> run_fig2(const std::vector<int>& N_list);

// For every Fourier problem id and M: the Ooura-Mori rule with
// fourier_truncation(M) ("<id>/ooura", N = M) and, when M_list is not
// empty, plain exp-sinh on f1(x) sin x at N = 50, 100, 200, 400
// ("<id>/exp-sinh", fixed grid with h = log(4 d N) / N).
std::vector<ExperimentRecord> run_fourier(const std::vector<std::string>& problem_ids,
                                          const std::vector<int>& M_list,
                                          const ReferenceTable& table);
double exp_sinh_baseline_step(int N);

// Sort by (method, N), the CSV row order.
void sort_records(std::vector<ExperimentRecord>& records);

// ---------------------------------------------------------------------------
// CSV

inline constexpr std::string_view csv_header = "method,N,evals,h,abs_error,value";

// Header plus one row per record, %.17g reals, LF line endings.
void write_csv(const std::vector<ExperimentRecord>& records, std::ostream& out);
void emit_csv(const std::vector<ExperimentRecord>& records, const std::string& path);
// Throws std::runtime_error on a malformed header or row.
std::vector<ExperimentRecord> read_csv(std::istream& in);

// ---------------------------------------------------------------------------
// Rate laws

// Least-squares line through (abscissa_i, log10 error_i), using only points
// with error_i > floor. r is the Pearson correlation.
struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r = 0.0;
  int points = 0;
};
RateFit fit_log_error(const std::vector<double>& abscissa, const std::vector<double>& errors,
                      double floor = 0.0);

double n_over_log_n(int N);
double sqrt_n(int N);

}  // namespace dequad::bench
