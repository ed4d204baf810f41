#include "dpsrk/link.hpp"

#include <cmath>

#include "dpsrk/errors.hpp"

namespace dpsrk {

void LinkScenario::validate() const {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("mu must be > 0");
  if (!(alpha_db_per_km >= 0.0)) throw DomainError("fibre loss must be >= 0 dB/km");
  if (!(length_km >= 0.0)) throw DomainError("link length must be >= 0 km");
  if (!(clock_hz > 0.0) || !std::isfinite(clock_hz)) throw DomainError("clock rate must be > 0");
  if (!(baseline_error >= 0.0 && baseline_error < 0.5)) {
    throw DomainError("baseline error must lie in [0, 0.5)");
  }
  if (n_detectors < 1) throw DomainError("at least one detector is required");
  if (delay_n < 1) throw DomainError("delay N must be >= 1");
  if (!(dead_time_delta >= 0.0)) throw DomainError("dead-time delta must be >= 0");
  detector.validate();
  if (!(n_detectors * detector.dark_per_window < 1.0)) {
    throw DomainError("total dark-count probability per window must stay below 1");
  }
}

double channel_transmittance(const DetectorSpec& detector, double alpha_db_per_km,
                             double length_km) {
  return std::pow(10.0, -(alpha_db_per_km * length_km + detector.receiver_loss_db) / 10.0);
}

Probability p_signal(const LinkScenario& s) {
  const double raw = s.mu * s.detector.efficiency *
                     channel_transmittance(s.detector, s.alpha_db_per_km, s.length_km);
  if (raw > 1.0) return {1.0, true};
  return {raw, false};
}

double p_dark(const LinkScenario& s) {
  const double value = s.n_detectors * s.detector.dark_per_window;
  if (!(value < 1.0)) {
    throw ModelRangeError("dark-count probability per window reached 1");
  }
  return value;
}

Probability p_click(const LinkScenario& s) {
  const Probability signal = p_signal(s);
  const double raw = signal.value + p_dark(s);
  if (raw > 1.0) return {1.0, true};
  return {raw, signal.clamped};
}

double qber(const LinkScenario& s) {
  const double signal = p_signal(s).value;
  const double dark = p_dark(s);
  const double click = signal + dark;
  if (!(click > 0.0)) {
    throw ModelRangeError("QBER is undefined when the click probability is zero");
  }
  return (0.5 * dark + s.baseline_error * signal) / click;
}

}  // namespace dpsrk
