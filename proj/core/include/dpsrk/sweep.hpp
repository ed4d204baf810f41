#pragma once

// Grid sweeps over link length, pump power or mean photon number, and their
// CSV form. Distance sweeps carry exactly the columns in kCsvColumns; pump
// and mu sweeps prepend the swept value, and multi-detector sweeps prepend a
// `detector` column.

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dpsrk/rate.hpp"
#include "dpsrk/scenario_file.hpp"

namespace dpsrk {

enum class SweepAxis { distance, pump, mu };

const char* to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(const std::string& text);

inline constexpr std::array<std::string_view, 11> kCsvColumns{
    "L_km",     "p_signal", "p_dark",     "p_click",    "qber",
    "tau",      "f",        "sifted_bps", "secure_bps", "secure_deadtime_bps",
    "flags"};

struct SweepRow {
  std::string detector;
  double axis_value = 0.0;
  RatePoint point;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::distance;
  bool detector_column = false;
  std::vector<SweepRow> rows;
};

struct SweepRequest {
  SweepAxis axis = SweepAxis::distance;
  double lo = 0.0;
  double hi = 300.0;
  int steps = 301;
  // Fixed link length for pump and mu sweeps.
  double length_km = 0.0;
};

// lo + i (hi - lo) / (steps - 1); the last point is exactly hi.
std::vector<double> sweep_grid(double lo, double hi, int steps);

// Pump sweeps rebuild the detector from the scenario's up-conversion fit (the
// reference fit when the scenario has none). Rows are in grid order.
SweepResult sweep(const ScenarioFile& scenario, const SweepRequest& request,
                  const ErrorCorrection& ec = ErrorCorrection::table());

// Concatenates single-detector sweeps and labels each row with its
// detector.name.
SweepResult merge_sweeps(const std::vector<SweepResult>& parts);

std::string csv_header(const SweepResult& result);
void write_csv(std::ostream& out, const SweepResult& result);

}  // namespace dpsrk
