#pragma once

// Log-log line charts from sweep CSVs. Output depends only on the CSV content,
// so identical input gives identical bytes.

#include <string>
#include <vector>

#include "chancomp/csv.hpp"

namespace chancomp {

/// One polyline per distinct combination of `group_cols` values, in order of
/// first appearance. Rows sharing an x within a group are averaged; points
/// with non-positive or non-finite coordinates are dropped.
std::string render_svg(const CsvTable& table, const std::string& x_col, const std::string& y_col,
                       const std::vector<std::string>& group_cols, const std::string& title = "");

/// Reads `csv_path` and writes the chart to `out_path`. Nothing is written on error.
void emit_svg(const std::string& csv_path, const std::string& x_col, const std::string& y_col,
              const std::vector<std::string>& group_cols, const std::string& out_path);

}  // namespace chancomp
