#pragma once

// Minimal RFC 4180 CSV: fields containing a comma, quote or newline are quoted.

#include <string>
#include <vector>

namespace chancomp {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a named column; throws ParseError naming the column otherwise.
  std::size_t column(const std::string& name) const;
};

std::string csv_escape(const std::string& field);
std::string csv_line(const std::vector<std::string>& fields);

CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::string& path);

/// Shortest round-trip representation ("%.17g"), "inf"/"-inf"/"nan" for non-finite values.
std::string format_double(double v);

/// Writes `content` to `path`, replacing any existing file; throws ConfigError on failure.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Creates `dir` (and parents) if needed and checks that it is writable.
void ensure_output_dir(const std::string& dir);

}  // namespace chancomp
