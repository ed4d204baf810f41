#pragma once

// Per-window detection probabilities and QBER for a fibre link between Alice
// and Bob. The measurement window is one clock period 1/nu; dark counts are
// stored per window so changing the clock never rescales them implicitly.

#include "dpsrk/detector.hpp"

namespace dpsrk {

struct LinkScenario {
  double mu = 0.2;                // mean photon number per pulse
  double alpha_db_per_km = 0.21;  // fibre loss coefficient
  double length_km = 0.0;
  double clock_hz = 1e9;          // pulse repetition rate nu
  double baseline_error = 0.01;   // b
  DetectorSpec detector;
  int n_detectors = 2;
  int delay_n = 1;                // Bob's interferometer delay N (in clock periods)
  double dead_time_delta = 1.0;   // delta in exp(-delta nu p_click t_d)

  // Throws DomainError on out-of-range fields or when n_detectors * d >= 1.
  void validate() const;

  LinkScenario at_length(double km) const {
    LinkScenario copy = *this;
    copy.length_km = km;
    return copy;
  }
};

// A probability that may have been clamped to 1.
struct Probability {
  double value = 0.0;
  bool clamped = false;
};

// 10^{-(alpha L + L_r)/10}: fibre plus receiver transmittance.
double channel_transmittance(const DetectorSpec& detector, double alpha_db_per_km,
                             double length_km);

Probability p_signal(const LinkScenario& s);

// n_detectors * d. Throws ModelRangeError when this reaches 1.
double p_dark(const LinkScenario& s);

// p_signal + p_dark, clamped to 1.
Probability p_click(const LinkScenario& s);

// (p_dark / 2 + b p_signal) / p_click. Throws ModelRangeError if p_click == 0.
double qber(const LinkScenario& s);

}  // namespace dpsrk
