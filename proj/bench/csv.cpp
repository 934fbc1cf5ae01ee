#include <dequad/bench.hpp>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dequad::bench {

namespace {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_real(const std::string& s) {
  const char* begin = s.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  // ERANGE on a subnormal still returns the exact value.
  if (end == begin || *end != '\0') throw std::runtime_error("bad real in CSV: " + s);
  return v;
}

long parse_integer(const std::string& s) {
  const char* begin = s.c_str();
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0' || errno == ERANGE)
    throw std::runtime_error("bad integer in CSV: " + s);
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

void write_csv(const std::vector<ExperimentRecord>& records, std::ostream& out) {
  out << csv_header << '\n';
  for (const ExperimentRecord& r : records) {
    if (r.method.find_first_of(",\n\r") != std::string::npos)
      throw std::invalid_argument("method name cannot go into a CSV field: " + r.method);
    out << r.method << ',' << r.N << ',' << r.evals << ',' << format_real(r.h) << ','
        << format_real(r.abs_error) << ',' << format_real(r.value) << '\n';
  }
}

void emit_csv(const std::vector<ExperimentRecord>& records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_csv(records, out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<ExperimentRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != csv_header)
    throw std::runtime_error("missing or unexpected CSV header");
  std::vector<ExperimentRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() != 6) throw std::runtime_error("CSV row needs 6 fields: " + line);
    ExperimentRecord r;
    r.method = fields[0];
    r.N = static_cast<int>(parse_integer(fields[1]));
    r.evals = parse_integer(fields[2]);
    r.h = parse_real(fields[3]);
    r.abs_error = parse_real(fields[4]);
    r.value = parse_real(fields[5]);
    records.push_back(std::move(r));
  }
  return records;
}

// ---------------------------------------------------------------------------

RateFit fit_log_error(const std::vector<double>& abscissa, const std::vector<double>& errors,
                      double floor) {
  if (abscissa.size() != errors.size())
    throw std::invalid_argument("abscissa and errors differ in length");
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (std::isfinite(errors[i]) && errors[i] > floor && errors[i] > 0.0) {
      xs.push_back(abscissa[i]);
      ys.push_back(std::log10(errors[i]));
    }
  }
  RateFit fit;
  fit.points = static_cast<int>(xs.size());
  if (fit.points < 2) return fit;
  const double n = fit.points;
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r = syy == 0.0 ? 0.0 : sxy / std::sqrt(sxx * syy);
  return fit;
}

double n_over_log_n(int N) {
  if (N < 2) throw std::invalid_argument("N / log N needs N >= 2");
  return N / std::log(static_cast<double>(N));
}

double sqrt_n(int N) { return std::sqrt(static_cast<double>(N)); }

}  // namespace dequad::bench
