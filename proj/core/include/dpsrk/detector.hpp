#pragma once

// Single-photon detector models: a directly parameterised InGaAs/InP APD and
// a silicon APD behind a PPLN sum-frequency up-converter whose efficiency and
// dark-count rate both depend on pump power.

#include <array>
#include <string>
#include <variant>

namespace dpsrk {

enum class GatingMode { gated, nongated };

const char* to_string(GatingMode mode);
GatingMode parse_gating_mode(const std::string& text);

struct DetectorSpec {
  std::string name;
  double efficiency = 0.0;
  // Probability of a dark count in one measurement window.
  double dark_per_window = 0.0;
  double dead_time_s = 0.0;
  double receiver_loss_db = 0.0;
  GatingMode mode = GatingMode::gated;

  // Throws DomainError when a field is outside its physical range.
  void validate() const;

  bool operator==(const DetectorSpec&) const = default;
};

// Fitted pump dependence of the up-converter: efficiency a1 sin^2(sqrt(a2 p))
// and a quartic dark-count polynomial, p in mW.
class UpConversionCurve {
 public:
  // Pump powers outside [0, kMaxPumpMw] are outside the fitted region.
  static constexpr double kMaxPumpMw = 30.0;

  // Validates a1 in (0, 1], bandwidth > 0 and a non-negative dark rate over
  // the supported pump domain.
  UpConversionCurve(double a1, double a2, std::array<double, 5> b, double bandwidth_hz);

  // Published PPLN fit with a 50 GHz waveguide bandwidth.
  static UpConversionCurve reference();

  double a1() const noexcept { return a1_; }
  double a2() const noexcept { return a2_; }
  const std::array<double, 5>& dark_coefficients() const noexcept { return b_; }
  double bandwidth_hz() const noexcept { return bandwidth_hz_; }

  bool operator==(const UpConversionCurve&) const = default;

 private:
  double a1_;
  double a2_;
  std::array<double, 5> b_;
  double bandwidth_hz_;
};

double up_efficiency(const UpConversionCurve& curve, double pump_mw);

// Dark-count rate in counts per second.
double up_dark_rate(const UpConversionCurve& curve, double pump_mw);

// Up-converter: the matched-filter window holds one spectral mode, d = D / B_d.
struct PerMode {
  double bandwidth_hz;
};
// Gated APD with gate width 1/B: d = D / B.
struct PerGate {
  double bit_rate_hz;
};
using DarkCountConvention = std::variant<PerMode, PerGate>;

double dark_per_window(double dark_rate_hz, DarkCountConvention convention);

// Normalised noise-equivalent power sqrt(2 D) / eta; lower is better.
double nep(double dark_rate_hz, double efficiency);

struct PumpOperatingPoint {
  double pump_mw = 0.0;
  double efficiency = 0.0;
  double dark_rate_hz = 0.0;
  double nep = 0.0;
};

// Minimum-NEP pump power within [lo_mw, hi_mw]. A coarse scan picks the best
// cell, then golden-section refines it to 1e-6 mW.
PumpOperatingPoint optimize_pump(const UpConversionCurve& curve, double lo_mw, double hi_mw);

DetectorSpec make_detector_from_upconversion(const UpConversionCurve& curve, double pump_mw,
                                             double dead_time_s, double receiver_loss_db,
                                             std::string name = "Si-APD");

}  // namespace dpsrk
