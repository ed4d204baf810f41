#pragma once

// Flat `key = value` scenario files. Lines starting with '#' (after optional
// whitespace) are comments; numbers use C-locale decimal; unknown or
// duplicate keys are rejected.
//
//   mu, alpha_db_per_km, clock_hz, baseline_error, delay_n, attack, delta,
//   detector.{name,mode,efficiency,dark_per_window,dead_time_s,receiver_loss_db},
//   upconv.{a1,a2,b0,b1,b2,b3,b4,bandwidth_hz,pump_mw}
//
// With upconv.pump_mw present the detector efficiency and dark counts are
// derived from the up-conversion fit and must not be given explicitly.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "dpsrk/detector.hpp"
#include "dpsrk/link.hpp"
#include "dpsrk/security.hpp"

namespace dpsrk {

struct ScenarioFile {
  double mu = 0.2;
  double alpha_db_per_km = 0.21;
  double clock_hz = 1e9;
  double baseline_error = 0.01;
  int delay_n = 1;
  AttackModel attack;
  double delta = 1.0;
  DetectorSpec detector;
  std::optional<UpConversionCurve> upconv;
  std::optional<double> pump_mw;

  // Detector actually used: the explicit one, or the up-converter at pump_mw.
  DetectorSpec effective_detector() const;
  LinkScenario link(double length_km) const;
  AttackModel attack_model() const;

  bool operator==(const ScenarioFile&) const = default;
};

ScenarioFile parse_scenario(std::string_view text, const std::string& source = "<scenario>");
ScenarioFile load_scenario(const std::filesystem::path& path);
std::string serialize_scenario(const ScenarioFile& scenario);

}  // namespace dpsrk
