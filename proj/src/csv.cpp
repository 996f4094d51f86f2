#include "splitconf/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace splitconf {

namespace {

std::string real17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string opt17(const std::optional<double>& v) {
  return v ? real17(*v) : std::string();
}

}  // namespace

std::string csv_header() {
  return "experiment,method,label,N,n,d,alpha,reps,seed,coverage,mc_stderr,median_width";
}

std::string format_csv_row(const CsvRow& row) {
  std::string out;
  out += row.experiment;
  out += ',';
  out += row.method;
  out += ',';
  out += row.label;
  out += ',';
  out += std::to_string(row.n_total);
  out += ',';
  out += std::to_string(row.n_inference);
  out += ',';
  out += std::to_string(row.dim);
  out += ',';
  out += real17(row.alpha);
  out += ',';
  out += std::to_string(row.reps);
  out += ',';
  out += std::to_string(row.seed);
  out += ',';
  out += opt17(row.coverage);
  out += ',';
  out += opt17(row.mc_stderr);
  out += ',';
  out += opt17(row.median_width);
  return out;
}

void write_csv(const std::string& path, const std::vector<CsvRow>& rows) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
  if (!out) {
    throw std::runtime_error("write_csv: cannot open " + path);
  }
  out << csv_header() << '\n';
  for (const CsvRow& row : rows) {
    out << format_csv_row(row) << '\n';
  }
  if (!out) {
    throw std::runtime_error("write_csv: write failed for " + path);
  }
}

}  // namespace splitconf
