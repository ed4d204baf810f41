#pragma once

// Secure key rate for DPS-QKD:
//   R = nu p_click { tau + f(e) [e log2 e + (1-e) log2(1-e)] }
// with optional dead-time saturation exp(-delta nu p_click t_d), plus the
// mean-photon-number optimiser, the maximum-distance solver and reference
// asymptotes.

#include <cstdint>
#include <string>

#include "dpsrk/link.hpp"
#include "dpsrk/security.hpp"

namespace dpsrk {

enum class RateFlag : std::uint8_t {
  clamped = 1u << 0,
  insecure = 1u << 1,
  above_ec_range = 1u << 2,
  deadtime_limited = 1u << 3,
};

class RateFlags {
 public:
  constexpr RateFlags() = default;

  constexpr void set(RateFlag f) noexcept { bits_ |= static_cast<std::uint8_t>(f); }
  constexpr bool has(RateFlag f) const noexcept {
    return (bits_ & static_cast<std::uint8_t>(f)) != 0;
  }
  constexpr bool empty() const noexcept { return bits_ == 0; }

  // Pipe-separated names in declaration order, e.g. "insecure|above_ec_range".
  std::string to_string() const;
  static RateFlags parse(const std::string& text);

  bool operator==(const RateFlags&) const = default;

 private:
  std::uint8_t bits_ = 0;
};

// The dead-time factor must cost more than this fraction of the rate before a
// point is flagged deadtime_limited.
inline constexpr double kDeadTimeFlagThreshold = 0.01;

struct RatePoint {
  double length_km = 0.0;
  double p_signal = 0.0;
  double p_dark = 0.0;
  double p_click = 0.0;
  double qber = 0.0;
  double tau = 0.0;
  double f_used = 0.0;
  double sifted_rate_hz = 0.0;
  double secure_rate_hz = 0.0;
  double secure_rate_deadtime_hz = 0.0;
  RateFlags flags;

  bool secure() const noexcept { return secure_rate_deadtime_hz > 0.0; }
};

// Binary entropy in bits with H(0) = H(1) = 0.
double binary_entropy(double e);

// nu p_click (tau - f H(e)), clamped at 0.
double key_rate(double clock_hz, double p_click, double e, double tau, double f);

RatePoint secure_rate(const LinkScenario& s, const AttackModel& a,
                      const ErrorCorrection& ec = ErrorCorrection::table());

double dead_time_factor(const LinkScenario& s);

// Ideal single-photon BB84 reference, nu p_signal / 2.
double bb84_reference(const LinkScenario& s);

// Small-error asymptote: nu (1 - mu/N) p_signal without memory, nu (1 - 2 mu)
// p_signal with it.
double asymptotic_rate(const LinkScenario& s, const AttackModel& a);

struct MuOptimum {
  double mu = 0.0;
  RatePoint point;
  bool insecure = false;
};

// Maximises the dead-time-corrected rate over mu in [lo, hi] by golden-section
// search to |d mu| < 1e-5.
MuOptimum optimize_mu(const LinkScenario& s, const AttackModel& a, double lo, double hi,
                      const ErrorCorrection& ec = ErrorCorrection::table());

// Largest L (to 0.01 km) whose dead-time-corrected rate exceeds r_min,
// located by doubling then bisection. Throws InsecureError when L = 0 already
// fails and NoFeasiblePointError if the rate never drops below r_min.
double max_secure_distance(const LinkScenario& s, const AttackModel& a, double r_min,
                           const ErrorCorrection& ec = ErrorCorrection::table());

}  // namespace dpsrk
