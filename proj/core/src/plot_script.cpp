#include "dpsrk/plot_script.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

#include "dpsrk/errors.hpp"
#include "dpsrk/number_format.hpp"
#include "dpsrk/sweep.hpp"

namespace dpsrk {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

// Python string literal with backslashes and quotes escaped.
std::string py_quote(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    if (c == '\\' || c == '"') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

CsvLayout inspect_sweep_csv(std::istream& csv, const std::string& source) {
  std::string header;
  if (!std::getline(csv, header)) throw ParseError(source, 1, 1, "empty CSV (no header row)");
  if (!header.empty() && header.back() == '\r') header.pop_back();

  const std::vector<std::string> cols = split_fields(header);
  if (cols.size() < kCsvColumns.size()) {
    throw ParseError(source, 1, 1, "header is missing sweep columns");
  }
  const std::size_t lead = cols.size() - kCsvColumns.size();
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
    if (cols[lead + i] != kCsvColumns[i]) {
      throw ParseError(source, 1, 1, "unexpected column '" + cols[lead + i] + "', expected '" +
                                         std::string(kCsvColumns[i]) + "'");
    }
  }

  CsvLayout layout;
  std::size_t i = 0;
  if (i < lead && cols[i] == "detector") {
    layout.has_detector = true;
    ++i;
  }
  if (i < lead && (cols[i] == "pump_mw" || cols[i] == "mu")) {
    layout.x_column = cols[i];
    ++i;
  }
  if (i != lead) throw ParseError(source, 1, 1, "unexpected leading column '" + cols[i] + "'");

  std::string line;
  int line_no = 1;
  while (std::getline(csv, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != cols.size()) {
      throw ParseError(source, line_no, 1,
                       "expected " + std::to_string(cols.size()) + " fields, got " +
                           std::to_string(fields.size()));
    }
    for (std::size_t c = layout.has_detector ? 1 : 0; c + 1 < fields.size(); ++c) {
      if (!parse_double(fields[c])) {
        throw ParseError(source, line_no, 1, "non-numeric value '" + fields[c] + "' in column '" +
                                                 cols[c] + "'");
      }
    }
    if (layout.has_detector &&
        std::find(layout.series.begin(), layout.series.end(), fields[0]) == layout.series.end()) {
      layout.series.push_back(fields[0]);
    }
    ++layout.data_rows;
  }
  return layout;
}

std::string make_plot_script(const std::string& csv_path, const CsvLayout& layout) {
  std::ostringstream s;
  s << "#!/usr/bin/env python3\n"
    << "# Generated by dpsrk plot. Secure key rate (dead-time corrected) on a log axis.\n";
  if (layout.data_rows == 0) s << "# warning: no data rows in " << csv_path << "\n";
  s << "import csv\n"
    << "import matplotlib.pyplot as plt\n\n"
    << "CSV_PATH = " << py_quote(csv_path) << "\n"
    << "X_COLUMN = " << py_quote(layout.x_column) << "\n"
    << "SERIES = [";
  for (std::size_t i = 0; i < layout.series.size(); ++i) {
    if (i) s << ", ";
    s << py_quote(layout.series[i]);
  }
  s << "]\n\n"
    << "with open(CSV_PATH, newline=\"\") as fh:\n"
    << "    rows = list(csv.DictReader(fh))\n\n"
    << "def trace(rows):\n"
    << "    pts = [(float(r[X_COLUMN]), float(r[\"secure_deadtime_bps\"])) for r in rows\n"
    << "           if \"insecure\" not in r[\"flags\"].split(\"|\")]\n"
    << "    return [p[0] for p in pts], [p[1] for p in pts]\n\n"
    << "fig, ax = plt.subplots()\n";
  if (layout.series.empty()) {
    s << "x, y = trace(rows)\n"
      << "ax.plot(x, y, label=\"secure rate\")\n";
  } else {
    s << "for name in SERIES:\n"
      << "    x, y = trace([r for r in rows if r[\"detector\"] == name])\n"
      << "    ax.plot(x, y, label=name)\n";
  }
  s << "ax.set_yscale(\"log\")\n"
    << "ax.set_xlabel(X_COLUMN)\n"
    << "ax.set_ylabel(\"secure key rate [bit/s]\")\n"
    << "ax.legend()\n"
    << "ax.grid(True, which=\"both\", alpha=0.3)\n"
    << "plt.show()\n";
  return s.str();
}

}  // namespace dpsrk
