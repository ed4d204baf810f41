#include "dpsrk/sweep.hpp"

#include <ostream>

#include "dpsrk/errors.hpp"
#include "dpsrk/number_format.hpp"

namespace dpsrk {

const char* to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::distance:
      return "distance";
    case SweepAxis::pump:
      return "pump";
    case SweepAxis::mu:
      return "mu";
  }
  return "distance";
}

SweepAxis parse_sweep_axis(const std::string& text) {
  if (text == "distance") return SweepAxis::distance;
  if (text == "pump") return SweepAxis::pump;
  if (text == "mu") return SweepAxis::mu;
  throw DomainError("unknown sweep axis '" + text + "' (expected distance|pump|mu)");
}

std::vector<double> sweep_grid(double lo, double hi, int steps) {
  if (!(lo < hi)) throw DomainError("sweep range needs lo < hi");
  if (steps < 2) throw DomainError("sweep needs at least 2 steps");
  std::vector<double> grid(static_cast<std::size_t>(steps));
  const double span = hi - lo;
  for (int i = 0; i < steps; ++i) {
    grid[static_cast<std::size_t>(i)] = lo + span * i / (steps - 1);
  }
  grid.back() = hi;
  return grid;
}

SweepResult sweep(const ScenarioFile& scenario, const SweepRequest& request,
                  const ErrorCorrection& ec) {
  SweepResult result;
  result.axis = request.axis;
  const AttackModel attack = scenario.attack_model();
  const std::vector<double> grid = sweep_grid(request.lo, request.hi, request.steps);

  for (const double x : grid) {
    SweepRow row;
    row.axis_value = x;
    switch (request.axis) {
      case SweepAxis::distance:
        row.point = secure_rate(scenario.link(x), attack, ec);
        break;
      case SweepAxis::mu: {
        ScenarioFile s = scenario;
        s.mu = x;
        row.point = secure_rate(s.link(request.length_km), attack, ec);
        break;
      }
      case SweepAxis::pump: {
        ScenarioFile s = scenario;
        if (!s.upconv) s.upconv = UpConversionCurve::reference();
        s.pump_mw = x;
        row.point = secure_rate(s.link(request.length_km), attack, ec);
        break;
      }
    }
    row.detector = scenario.detector.name;
    result.rows.push_back(std::move(row));
  }
  return result;
}

SweepResult merge_sweeps(const std::vector<SweepResult>& parts) {
  SweepResult merged;
  if (parts.empty()) return merged;
  merged.axis = parts.front().axis;
  merged.detector_column = true;
  for (const auto& part : parts) {
    if (part.axis != merged.axis) throw DomainError("cannot merge sweeps over different axes");
    merged.rows.insert(merged.rows.end(), part.rows.begin(), part.rows.end());
  }
  return merged;
}

std::string csv_header(const SweepResult& result) {
  std::string header;
  if (result.detector_column) header += "detector,";
  if (result.axis == SweepAxis::pump) header += "pump_mw,";
  if (result.axis == SweepAxis::mu) header += "mu,";
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
    if (i) header += ',';
    header += kCsvColumns[i];
  }
  return header;
}

void write_csv(std::ostream& out, const SweepResult& result) {
  out << csv_header(result) << '\n';
  for (const SweepRow& row : result.rows) {
    const RatePoint& p = row.point;
    if (result.detector_column) out << row.detector << ',';
    if (result.axis != SweepAxis::distance) out << format_double(row.axis_value) << ',';
    out << format_double(p.length_km) << ',' << format_double(p.p_signal) << ','
        << format_double(p.p_dark) << ',' << format_double(p.p_click) << ','
        << format_double(p.qber) << ',' << format_double(p.tau) << ','
        << format_double(p.f_used) << ',' << format_double(p.sifted_rate_hz) << ','
        << format_double(p.secure_rate_hz) << ',' << format_double(p.secure_rate_deadtime_hz)
        << ',' << p.flags.to_string() << '\n';
  }
}

}  // namespace dpsrk
