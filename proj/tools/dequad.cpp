// dequad: convergence sweeps and single integrations from the command line.
//
//   dequad integrate --problem fig1 --method tanh-sinh --N 32
//   dequad fig1 --N 4,8,16,32,64 --out fig1.csv
//   dequad fig2 --N 8,16,32,64 --out fig2.csv
//   dequad fourier --M 4,8,16,32 --out fourier.csv
//   dequad --regen-oracle
//
// Exit status: 0 on success, 1 on bad usage or I/O failure, 2 when any
// record (or the single integration) failed.

#include <dequad/bench.hpp>
#include <dequad/error.hpp>
#include <dequad/sinc.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>

namespace {

using namespace dequad;
using namespace dequad::bench;
using nlohmann::json;

constexpr int exit_flagged = 2;

json reference_meta(const std::string& id, const Reference& ref) {
  return {{"problem", id},
          {"value", ref.value},
          {"provenance", std::string(to_string(ref.provenance))},
          {"procedure", ref.procedure},
          {"agreement", ref.agreement}};
}

// Writes the CSV (stdout when path is empty) and, next to a file, a
// <path>.meta.json with the sweep parameters and reference provenance.
int finish(const std::vector<ExperimentRecord>& records, const std::string& path, json meta) {
  if (path.empty()) {
    write_csv(records, std::cout);
  } else {
    emit_csv(records, path);
    meta["rows"] = records.size();
    std::ofstream out(path + ".meta.json", std::ios::binary);
    out << meta.dump(2) << '\n';
    if (!out) throw std::runtime_error("cannot write " + path + ".meta.json");
  }
  int status = 0;
  for (const auto& r : records) {
    if (!r.flagged) continue;
    std::cerr << "flagged: " << r.method << " N=" << r.N << ": " << r.note << '\n';
    status = exit_flagged;
  }
  return status;
}

// "4,8,16" -> {4, 8, 16}; empty items are skipped, so "" is an empty list.
std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const std::string item = text.substr(start, end - start);
    if (!item.empty()) {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument("not an integer: " + item);
      out.push_back(v);
    }
    start = end + 1;
  }
  return out;
}

struct IntegrateArgs {
  std::string problem;
  std::string method = "default";
  std::optional<int> N;
  std::optional<double> h;
  double tol = 1e-12;
  int M = 16;
};

Transform integral_transform(const std::string& method, const Interval& domain) {
  if (method == "exp-sinh") return Transform::exp_sinh();
  if (method == "sinh-sinh") return Transform::sinh_sinh();
  return default_transform(domain);
}

QuadratureResult run_integral(const TestProblem& p, const IntegrateArgs& a) {
  const bool fig1_family = a.method == "tanh-sinh" || a.method == "tanh" ||
                           a.method == "tanh-sinh-cubed" || a.method == "erf" ||
                           a.method == "imt";
  if (fig1_family) {
    const Fig1Method m = parse_fig1_method(a.method);
    if (m == Fig1Method::IMT) {
      const int N = a.N.value_or(64);
      return integrate_imt(p.f, GridSpec{a.h.value_or(fig1_step(m, N)), N}, p.domain);
    }
    const Transform tr = m == Fig1Method::Tanh            ? Transform::tanh()
                         : m == Fig1Method::TanhSinhCubed ? Transform::tanh_sinh_cubed()
                         : m == Fig1Method::Erf           ? Transform::erf()
                                                          : Transform::tanh_sinh();
    if (a.N) {
      const double h = a.h.value_or(fig1_step(m, *a.N));
      return integrate(p.f, p.domain, QuadratureOptions::fixed({h, *a.N}), tr);
    }
    return integrate(p.f, p.domain,
                     QuadratureOptions::adaptive(a.tol, a.tol, max_adaptive_level), tr);
  }
  if (a.method != "default" && a.method != "exp-sinh" && a.method != "sinh-sinh")
    throw std::invalid_argument("unknown method for an integral problem: " + a.method);
  const Transform tr = integral_transform(a.method, p.domain);
  if (a.N) {
    const double h = a.h ? *a.h : exp_sinh_baseline_step(std::max(*a.N, 1));
    return integrate(p.f, p.domain, QuadratureOptions::fixed({h, *a.N}), tr);
  }
  return integrate(p.f, p.domain,
                   QuadratureOptions::adaptive(a.tol, a.tol, max_adaptive_level), tr);
}

QuadratureResult run_fourier_problem(const TestProblem& p, const IntegrateArgs& a) {
  const std::function<double(double)> f1 = [&p](double x) {
    return p.f(x, x, std::numeric_limits<double>::infinity());
  };
  if (a.method == "default" || a.method == "ooura" || a.method == "ooura-original") {
    FourierOptions opts;
    if (a.method == "ooura-original") opts.map = FourierMap::Original;
    FourierTruncation tr = fourier_truncation(a.M, opts);
    if (a.N) tr = {*a.N, *a.N};
    return integrate_fourier_sin(f1, a.M, tr.N_minus, tr.N_plus, opts);
  }
  if (a.method == "exp-sinh") {
    const auto& g = p.oscillatory;
    if (a.N) {
      const double h = a.h ? *a.h : exp_sinh_baseline_step(std::max(*a.N, 1));
      return integrate(g, p.domain, QuadratureOptions::fixed({h, *a.N}), Transform::exp_sinh());
    }
    return integrate(g, p.domain, QuadratureOptions::adaptive(a.tol, a.tol, max_adaptive_level),
                     Transform::exp_sinh());
  }
  throw std::invalid_argument("unknown method for a Fourier problem: " + a.method);
}

int cmd_integrate(const IntegrateArgs& a, const ReferenceTable& table) {
  const TestProblem p = problem(a.problem, table);
  if (p.kind == ProblemKind::Approximation)
    throw std::invalid_argument(a.problem + " is an approximation problem; use fig2");
  json out = {{"problem", p.id}, {"method", a.method}, {"reference", p.reference.value}};
  int status = 0;
  try {
    const QuadratureResult r =
        p.kind == ProblemKind::Fourier ? run_fourier_problem(p, a) : run_integral(p, a);
    out["value"] = r.value;
    out["abs_error"] = std::fabs(r.value - p.reference.value);
    out["evals"] = r.evals;
    out["h"] = r.grid.h;
    out["N"] = r.grid.N;
    if (r.error_estimated) out["error_estimate"] = r.error_estimate;
  } catch (const NoConvergence& e) {
    out["value"] = e.best_value();
    out["abs_error"] = std::fabs(e.best_value() - p.reference.value);
    out["evals"] = e.evals();
    out["error_estimate"] = e.error_estimate();
    out["failure"] = e.what();
    status = exit_flagged;
  } catch (const Error& e) {
    out["failure"] = e.what();
    status = exit_flagged;
  }
  std::cout << out.dump(2) << '\n';
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DE-transform quadrature and Sinc approximation sweeps"};
  app.require_subcommand(0, 1);

  bool regen = false;
  std::string references = default_reference_path();
  app.add_flag("--regen-oracle", regen, "Recompute the derived reference values and rewrite the file");
  app.add_option("--references", references, "Reference value file")->capture_default_str();

  IntegrateArgs ia;
  auto* integ = app.add_subcommand("integrate", "Integrate one registered problem");
  integ->add_option("--problem", ia.problem, "Problem id")->required();
  integ->add_option("--method", ia.method,
                    "default, tanh-sinh, tanh, tanh-sinh-cubed, erf, imt, exp-sinh, sinh-sinh, "
                    "ooura, ooura-original")
      ->capture_default_str();
  integ->add_option("--N", ia.N, "Fixed grid half-width (adaptive when omitted)");
  integ->add_option("--step", ia.h, "Fixed grid step (a priori rule when omitted)");
  integ->add_option("--tol", ia.tol, "Adaptive tolerance, absolute and relative")->capture_default_str();
  integ->add_option("--M", ia.M, "Ooura-Mori scale")->capture_default_str();

  std::string fig1_N = "4,8,16,32,64";
  std::vector<std::string> fig1_methods;
  std::string fig1_out;
  auto* fig1 = app.add_subcommand("fig1", "Transform comparison on the endpoint-singular integral");
  fig1->add_option("--N", fig1_N, "Half-widths")->capture_default_str();
  fig1->add_option("--methods", fig1_methods, "Subset of tanh-sinh,tanh,tanh-sinh-cubed,erf,imt")
      ->delimiter(',');
  fig1->add_option("--out", fig1_out, "CSV path (stdout when omitted)");

  std::string fig2_N = "8,16,32,64";
  std::string fig2_out;
  auto* fig2 = app.add_subcommand("fig2", "SE-Sinc, DE-Sinc and Chebyshev sup-errors");
  fig2->add_option("--N", fig2_N, "Half-widths")->capture_default_str();
  fig2->add_option("--out", fig2_out, "CSV path (stdout when omitted)");

  std::string fourier_M = "4,8,16,32";
  std::vector<std::string> fourier_problems{"dirichlet", "lorentz-sin", "exp-sin"};
  std::string fourier_out;
  auto* fourier = app.add_subcommand("fourier", "Ooura-Mori rule against plain exp-sinh");
  fourier->add_option("--M", fourier_M, "Scales M (h = pi / M)")->capture_default_str();
  fourier->add_option("--problems", fourier_problems, "Fourier problem ids")
      ->delimiter(',')
      ->capture_default_str();
  fourier->add_option("--out", fourier_out, "CSV path (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (regen) {
      const ReferenceTable table = regenerate_references();
      save_references(table, references);
      for (const auto& [id, ref] : table)
        std::printf("%s %.17g (agreement %.3g)\n", id.c_str(), ref.value, ref.agreement);
      if (app.get_subcommands().empty()) return 0;
    }
    if (app.get_subcommands().empty()) {
      std::cerr << app.help();
      return 1;
    }

    const ReferenceTable table = load_references(references);

    if (*integ) return cmd_integrate(ia, table);

    if (*fig1) {
      std::vector<Fig1Method> methods;
      for (const auto& m : fig1_methods) methods.push_back(parse_fig1_method(m));
      if (methods.empty()) methods = all_fig1_methods();
      const TestProblem p = problem("fig1", table);
      const std::vector<int> N_list = parse_int_list(fig1_N);
      json meta = {{"experiment", "fig1"},
                   {"N", N_list},
                   {"strip_width", fig1_strip_width},
                   {"endpoint_exponent", fig1_endpoint_exponent},
                   {"reference", reference_meta(p.id, p.reference)}};
      return finish(run_fig1(N_list, methods, p.reference.value), fig1_out, meta);
    }

    if (*fig2) {
      const TestProblem p = problem("fig2", table);
      const std::vector<int> N_list = parse_int_list(fig2_N);
      json meta = {{"experiment", "fig2"},
                   {"N", N_list},
                   {"grid_points", fig2_grid_points},
                   {"endpoint_margin", sup_error_margin},
                   {"probe", fig2_probe},
                   {"reference", reference_meta(p.id, p.reference)}};
      return finish(run_fig2(N_list), fig2_out, meta);
    }

    if (*fourier) {
      json refs = json::array();
      for (const auto& id : fourier_problems) {
        const TestProblem p = problem(id, table);
        refs.push_back(reference_meta(id, p.reference));
      }
      const std::vector<int> M_list = parse_int_list(fourier_M);
      json meta = {{"experiment", "fourier"},
                   {"M", M_list},
                   {"note", "N holds M for ooura rows"},
                   {"references", refs}};
      return finish(run_fourier(fourier_problems, M_list, table), fourier_out, meta);
    }
  } catch (const std::exception& e) {
    std::cerr << "dequad: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
