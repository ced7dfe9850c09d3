#pragma once

// Deterministic CSV: header row, LF endings, RFC 4180 quoting, reals with 17
// significant digits (fixed notation for 1e-5 <= |x| < 1e17, scientific
// otherwise, "inf"/"-inf"/"nan" for non-finite values).

#include <string>
#include <vector>

namespace memwave {

std::string format_real(double x);
double parse_real(const std::string& s);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

std::string to_csv_text(const CsvTable& table);
CsvTable parse_csv_text(const std::string& text);

/// Writes through a temporary file and a rename. Raises IoError on failure.
void write_csv(const CsvTable& table, const std::string& path);
CsvTable read_csv(const std::string& path);

/// Atomic text file write (temp file then rename).
void write_text_atomic(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);

}  // namespace memwave
