#include "covertbf/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace covertbf {

namespace {

// Shortest round-trip representation; locale independent.
void put(std::ostream& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, res.ptr - buf);
}

double parse_double(const std::string& field, int line, const char* name) {
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw InvalidInput("csv line " + std::to_string(line) + ": " + name + " is not a number: '" + field + "'");
  }
  return v;
}

}  // namespace

void write_rows(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kResultHeader << '\n';
  for (const auto& r : rows) {
    out << r.scene_id << ',';
    for (double v : {r.axis_value, r.mi_bits, r.rate_bits, r.kl01, r.kl10, r.p_fa, r.p_md, r.xi, r.worst_kl}) {
      put(out, v);
      out << ',';
    }
    out << (r.feasible ? 1 : 0) << ',';
    put(out, r.wall_time_ms);
    out << '\n';
  }
}

void write_rows(const std::string& path, const std::vector<ResultRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot open " + path + " for writing");
  write_rows(out, rows);
  if (!out) throw InvalidInput("write failed: " + path);
}

std::vector<ResultRow> read_rows(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kResultHeader) throw InvalidInput("csv line 1: header does not match the result schema");
  std::vector<ResultRow> rows;
  static constexpr const char* kNames[] = {"scene_id", "axis_value", "mi_bits",       "rate_bits",
                                           "kl01",     "kl10",       "p_fa",          "p_md",
                                           "xi",       "worst_kl",   "feasible_flag", "wall_time_ms"};
  for (int n = 2; std::getline(in, line); ++n) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 12) {
      throw InvalidInput("csv line " + std::to_string(n) + ": expected 12 fields, got " + std::to_string(f.size()));
    }
    double v[12];
    for (int k = 0; k < 12; ++k) v[k] = parse_double(f[k], n, kNames[k]);
    ResultRow r;
    r.scene_id = static_cast<std::int64_t>(v[0]);
    r.axis_value = v[1];
    r.mi_bits = v[2];
    r.rate_bits = v[3];
    r.kl01 = v[4];
    r.kl10 = v[5];
    r.p_fa = v[6];
    r.p_md = v[7];
    r.xi = v[8];
    r.worst_kl = v[9];
    if (v[10] != 0.0 && v[10] != 1.0)
      throw InvalidInput("csv line " + std::to_string(n) + ": feasible_flag must be 0 or 1");
    r.feasible = v[10] == 1.0;
    r.wall_time_ms = v[11];
    rows.push_back(r);
  }
  return rows;
}

std::vector<ResultRow> read_rows(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  return read_rows(in);
}

std::string summary_path(const std::string& path) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + "_summary";
  return path.substr(0, dot) + "_summary" + path.substr(dot);
}

void write_violation_summary(const std::string& path, const std::vector<SceneViolation>& scenes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot open " + path + " for writing");
  out << "scene_id,feasible_flag,n_samples,n_violations,violation_fraction,worst_kl,worst_violates\n";
  for (const auto& s : scenes) {
    out << s.scene_id << ',' << (s.feasible ? 1 : 0) << ',' << s.n_samples << ',' << s.n_violations << ',';
    put(out, s.violation_fraction());
    out << ',';
    put(out, s.worst_kl);
    out << ',' << (s.worst_violates ? 1 : 0) << '\n';
  }
}

void write_sweep_summary(const std::string& path, const std::vector<SweepPoint>& points) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot open " + path + " for writing");
  out << "axis_value,n_feasible,mean_mi,std_mi,mean_rate,std_rate,mean_worst_kl\n";
  for (const auto& p : points) {
    put(out, p.axis_value);
    out << ',' << p.n_feasible;
    for (double v : {p.mean_mi, p.std_mi, p.mean_rate, p.std_rate, p.mean_worst_kl}) {
      out << ',';
      put(out, v);
    }
    out << '\n';
  }
}

}  // namespace covertbf
