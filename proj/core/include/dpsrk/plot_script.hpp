#pragma once

// Turns a sweep CSV into a standalone matplotlib script. The script re-reads
// the CSV at run time; this library never executes it.

#include <iosfwd>
#include <string>
#include <vector>

namespace dpsrk {

struct CsvLayout {
  bool has_detector = false;
  std::string x_column = "L_km";
  std::vector<std::string> series;  // distinct detector names, first-seen order
  std::size_t data_rows = 0;
};

// Validates the header and every row's field count. Throws ParseError.
CsvLayout inspect_sweep_csv(std::istream& csv, const std::string& source);

std::string make_plot_script(const std::string& csv_path, const CsvLayout& layout);

}  // namespace dpsrk
