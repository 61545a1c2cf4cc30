#pragma once

#include <string>
#include <vector>

namespace sfwm {

/// Nine significant digits in scientific notation, e.g. 6.09391459e+02.
std::string format_sci(double v);

/// Rounds to nine significant digits so JSON dumps stay byte-stable.
double round_sig9(double v);

/// Joins formatted fields with commas and terminates the line with LF.
std::string csv_row(const std::vector<double>& fields);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Reads a comma-separated numeric table with a header row. When `expected`
/// is non-empty the header must match it. Errors carry the line number.
CsvTable read_csv(const std::string& path, const std::vector<std::string>& expected = {});

void write_text_file(const std::string& path, const std::string& content);

}  // namespace sfwm
