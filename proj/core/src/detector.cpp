#include "dpsrk/detector.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>
#include <limits>
#include <string>

#include "dpsrk/errors.hpp"
#include "dpsrk/optimize.hpp"

namespace dpsrk {

namespace {

void check_pump(double pump_mw) {
  if (!(pump_mw >= 0.0)) {
    throw DomainError("pump power must be >= 0 mW, got " + std::to_string(pump_mw));
  }
  if (pump_mw > UpConversionCurve::kMaxPumpMw) {
    throw DomainError("pump power " + std::to_string(pump_mw) +
                      " mW is outside the fitted range [0, 30] mW");
  }
}

double dark_polynomial(const std::array<double, 5>& b, double p) {
  return b[0] + p * (b[1] + p * (b[2] + p * (b[3] + p * b[4])));
}

}  // namespace

const char* to_string(GatingMode mode) {
  return mode == GatingMode::gated ? "gated" : "nongated";
}

GatingMode parse_gating_mode(const std::string& text) {
  if (text == "gated") return GatingMode::gated;
  if (text == "nongated") return GatingMode::nongated;
  throw DomainError("unknown detector mode '" + text + "' (expected gated|nongated)");
}

void DetectorSpec::validate() const {
  if (!(efficiency >= 0.0 && efficiency <= 1.0)) {
    throw DomainError("detector efficiency must lie in [0, 1]");
  }
  // Two detectors share the window, so 2d must stay below one.
  if (!(dark_per_window >= 0.0 && dark_per_window < 0.5)) {
    throw DomainError("dark counts per window must lie in [0, 0.5)");
  }
  if (!(dead_time_s >= 0.0)) {
    throw DomainError("dead time must be >= 0");
  }
  if (!(receiver_loss_db >= 0.0)) {
    throw DomainError("receiver loss must be >= 0 dB");
  }
}

UpConversionCurve::UpConversionCurve(double a1, double a2, std::array<double, 5> b,
                                     double bandwidth_hz)
    : a1_(a1), a2_(a2), b_(b), bandwidth_hz_(bandwidth_hz) {
  if (!(a1 > 0.0 && a1 <= 1.0)) {
    throw DomainError("up-conversion peak efficiency a1 must lie in (0, 1]");
  }
  if (!(a2 > 0.0) || !std::isfinite(a2)) {
    throw DomainError("up-conversion scale a2 must be positive");
  }
  if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz)) {
    throw DomainError("waveguide bandwidth must be positive");
  }
  constexpr int kSamples = 30001;
  for (int i = 0; i < kSamples; ++i) {
    const double p = kMaxPumpMw * i / (kSamples - 1);
    if (!(dark_polynomial(b_, p) >= 0.0)) {
      throw ModelRangeError("dark-count polynomial is negative at " + std::to_string(p) +
                            " mW inside the supported pump range");
    }
  }
}

UpConversionCurve UpConversionCurve::reference() {
  return UpConversionCurve(0.465, 79.75, {50.0, 826.4, 110.3, -0.403, 0.00065}, 50e9);
}

double up_efficiency(const UpConversionCurve& curve, double pump_mw) {
  check_pump(pump_mw);
  const double s = std::sin(std::sqrt(curve.a2() * pump_mw));
  return curve.a1() * s * s;
}

double up_dark_rate(const UpConversionCurve& curve, double pump_mw) {
  check_pump(pump_mw);
  const double rate = dark_polynomial(curve.dark_coefficients(), pump_mw);
  if (rate < 0.0) {
    throw ModelRangeError("dark-count polynomial is negative at " + std::to_string(pump_mw) +
                          " mW");
  }
  return rate;
}

double dark_per_window(double dark_rate_hz, DarkCountConvention convention) {
  if (!(dark_rate_hz >= 0.0)) {
    throw DomainError("dark-count rate must be >= 0");
  }
  const double divisor = std::visit(
      [](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, PerMode>) {
          return c.bandwidth_hz;
        } else {
          return c.bit_rate_hz;
        }
      },
      convention);
  if (!(divisor > 0.0)) {
    throw DomainError("bandwidth / bit rate must be positive");
  }
  return dark_rate_hz / divisor;
}

double nep(double dark_rate_hz, double efficiency) {
  if (!(efficiency > 0.0)) {
    throw DomainError("NEP requires a positive efficiency");
  }
  if (!(dark_rate_hz >= 0.0)) {
    throw DomainError("dark-count rate must be >= 0");
  }
  return std::sqrt(2.0 * dark_rate_hz) / efficiency;
}

PumpOperatingPoint optimize_pump(const UpConversionCurve& curve, double lo_mw, double hi_mw) {
  check_pump(lo_mw);
  check_pump(hi_mw);
  if (lo_mw > hi_mw) {
    throw DomainError("pump range is empty");
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  auto objective = [&curve](double p) {
    const double eta = up_efficiency(curve, p);
    return eta > 0.0 ? nep(up_dark_rate(curve, p), eta) : kInf;
  };

  double best_p = lo_mw;
  if (hi_mw > lo_mw) {
    // The efficiency fit is periodic in sqrt(p), so NEP has several basins
    // separated by poles; scan first, then refine the winning cell.
    constexpr int kCells = 4096;
    const double step = (hi_mw - lo_mw) / kCells;
    int best_i = 0;
    double best_v = kInf;
    for (int i = 0; i <= kCells; ++i) {
      const double p = i == kCells ? hi_mw : lo_mw + step * i;
      const double v = objective(p);
      if (v < best_v) {
        best_v = v;
        best_i = i;
      }
    }
    if (best_v == kInf) {
      throw NoFeasiblePointError("up-conversion efficiency is zero across the pump range");
    }
    const double a = best_i == 0 ? lo_mw : lo_mw + step * (best_i - 1);
    const double b = best_i == kCells ? hi_mw : std::min(hi_mw, lo_mw + step * (best_i + 1));
    const ScalarOptimum refined = golden_section_minimize(objective, a, b, 1e-7);
    best_p = refined.value <= best_v ? refined.x : (best_i == kCells ? hi_mw : lo_mw + step * best_i);
  }

  const double eta = up_efficiency(curve, best_p);
  if (!(eta > 0.0)) {
    throw NoFeasiblePointError("up-conversion efficiency is zero across the pump range");
  }
  const double dark = up_dark_rate(curve, best_p);
  return {best_p, eta, dark, nep(dark, eta)};
}

DetectorSpec make_detector_from_upconversion(const UpConversionCurve& curve, double pump_mw,
                                             double dead_time_s, double receiver_loss_db,
                                             std::string name) {
  DetectorSpec spec;
  spec.name = std::move(name);
  spec.efficiency = up_efficiency(curve, pump_mw);
  spec.dark_per_window =
      dark_per_window(up_dark_rate(curve, pump_mw), PerMode{curve.bandwidth_hz()});
  spec.dead_time_s = dead_time_s;
  spec.receiver_loss_db = receiver_loss_db;
  spec.mode = GatingMode::nongated;
  spec.validate();
  return spec;
}

}  // namespace dpsrk
