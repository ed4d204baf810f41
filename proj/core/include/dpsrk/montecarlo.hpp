#pragma once

// Seeded, semiclassical per-window simulator used as an empirical oracle for
// the analytic click-probability and QBER formulas. Each window is a pair of
// Bernoulli trials (signal click, dark click) followed by a bit-flip draw; no
// photonic state is evolved.
//
// Random numbers come from counter-based SplitMix64 (Steele, Lea & Flood,
// 2014; stream layout version 1 below). Windows are cut into fixed chunks of
// kChunkWindows; chunk c draws from a stream keyed by (seed, c, purpose), so
// counts are identical for any number of worker threads. Uniforms carry 53
// random bits.

#include <cstdint>
#include <vector>

#include "dpsrk/link.hpp"

namespace dpsrk {

class SplitMix64 {
 public:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  static constexpr int kStreamLayoutVersion = 1;

  explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  // Independent stream for (seed, chunk, purpose).
  static SplitMix64 substream(std::uint64_t seed, std::uint64_t chunk, std::uint64_t purpose);

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  constexpr std::uint64_t next() noexcept {
    state_ += kGamma;
    return mix(state_);
  }

  // Uniform in [0, 1) with 53 random bits.
  constexpr double uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n), n > 0, by rejection sampling.
  std::uint64_t below(std::uint64_t n) noexcept;

 private:
  std::uint64_t state_;
};

struct McConfig {
  std::uint64_t n_pulses = 1;
  std::uint64_t seed = 0;
  LinkScenario scenario;
  // Intercept-resend mode only.
  double ir_fraction = 0.0;
  int eve_delay_m = 1;
  // Bob picks his delay uniformly from this set each window; empty means
  // {scenario.delay_n}.
  std::vector<int> bob_delays;

  void validate() const;
};

struct Estimate {
  double value = 0.0;
  double standard_error = 0.0;

  bool operator==(const Estimate&) const = default;
};

struct McResult {
  std::uint64_t windows = 0;
  std::uint64_t clicks = 0;
  std::uint64_t errors = 0;
  std::uint64_t attacked_clicks = 0;
  std::uint64_t attacked_errors = 0;
  Estimate p_click;
  Estimate qber;
  // Error rate over attacked windows only; zero-valued outside IR mode.
  Estimate attacked_qber;

  bool operator==(const McResult&) const = default;
};

inline constexpr std::uint64_t kChunkWindows = 1u << 16;

// A window with both a signal and a dark click counts once and keeps the
// signal's bit; the overlap is O(p_signal p_dark).
McResult simulate_link(const McConfig& cfg, unsigned workers = 0);

// Each window is attacked with probability ir_fraction. Eve resends the pair
// with delay M, so Bob registers a click; if his delay N differs from M the
// bit is wrong with probability (1 - 1/(2N))/2, otherwise it is correct.
// Unattacked windows behave as in simulate_link, and ir_fraction == 0
// reproduces simulate_link exactly.
McResult simulate_intercept_resend(const McConfig& cfg, unsigned workers = 0);

// Analytic expectations matching the simulators.
double expected_attacked_qber(const McConfig& cfg);
double expected_intercept_resend_qber(const McConfig& cfg);
double expected_intercept_resend_click(const McConfig& cfg);

}  // namespace dpsrk
