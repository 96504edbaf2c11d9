#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "covertbf/experiment.hpp"

namespace covertbf {

inline constexpr const char* kResultHeader =
    "scene_id,axis_value,mi_bits,rate_bits,kl01,kl10,p_fa,p_md,xi,worst_kl,feasible_flag,wall_time_ms";

/// Rows are written in the given order with round-trip precision.
void write_rows(std::ostream& out, const std::vector<ResultRow>& rows);
void write_rows(const std::string& path, const std::vector<ResultRow>& rows);

/// Throws InvalidInput on a header or field mismatch (line number in the message).
std::vector<ResultRow> read_rows(std::istream& in);
std::vector<ResultRow> read_rows(const std::string& path);

void write_violation_summary(const std::string& path, const std::vector<SceneViolation>& scenes);
void write_sweep_summary(const std::string& path, const std::vector<SweepPoint>& points);

/// "out.csv" -> "out_summary.csv"
std::string summary_path(const std::string& path);

}  // namespace covertbf
