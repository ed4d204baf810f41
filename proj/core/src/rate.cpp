#include "dpsrk/rate.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "dpsrk/errors.hpp"
#include "dpsrk/optimize.hpp"

namespace dpsrk {

namespace {

constexpr std::array<std::pair<RateFlag, const char*>, 4> kFlagNames{{
    {RateFlag::clamped, "clamped"},
    {RateFlag::insecure, "insecure"},
    {RateFlag::above_ec_range, "above_ec_range"},
    {RateFlag::deadtime_limited, "deadtime_limited"},
}};

constexpr double kMaxSearchKm = 1e5;

}  // namespace

std::string RateFlags::to_string() const {
  std::string out;
  for (const auto& [flag, name] : kFlagNames) {
    if (!has(flag)) continue;
    if (!out.empty()) out += '|';
    out += name;
  }
  return out;
}

RateFlags RateFlags::parse(const std::string& text) {
  RateFlags flags;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, '|')) {
    if (token.empty()) continue;
    bool known = false;
    for (const auto& [flag, name] : kFlagNames) {
      if (token == name) {
        flags.set(flag);
        known = true;
      }
    }
    if (!known) throw DomainError("unknown rate flag '" + token + "'");
  }
  return flags;
}

double binary_entropy(double e) {
  if (e <= 0.0 || e >= 1.0) return 0.0;
  return -(e * std::log2(e) + (1.0 - e) * std::log2(1.0 - e));
}

double key_rate(double clock_hz, double p_click, double e, double tau, double f) {
  return std::max(0.0, clock_hz * p_click * (tau - f * binary_entropy(e)));
}

double dead_time_factor(const LinkScenario& s) {
  return std::exp(-s.dead_time_delta * s.clock_hz * p_click(s).value * s.detector.dead_time_s);
}

RatePoint secure_rate(const LinkScenario& s, const AttackModel& a, const ErrorCorrection& ec) {
  s.validate();
  a.validate();

  RatePoint pt;
  pt.length_km = s.length_km;
  const Probability signal = p_signal(s);
  const Probability click = p_click(s);
  pt.p_signal = signal.value;
  pt.p_dark = p_dark(s);
  pt.p_click = click.value;
  pt.sifted_rate_hz = s.clock_hz * pt.p_click;
  if (click.clamped) pt.flags.set(RateFlag::clamped);

  if (!(pt.p_click > 0.0)) {
    pt.flags.set(RateFlag::insecure);
    return pt;
  }
  pt.qber = qber(s);

  const std::optional<double> f = ec.efficiency(pt.qber);
  if (!f) {
    pt.flags.set(RateFlag::above_ec_range);
    pt.flags.set(RateFlag::insecure);
    return pt;
  }
  pt.f_used = *f;

  bool insecure = false;
  if (a.is_hybrid()) {
    const Fraction gamma = surviving_fraction(s.mu, pt.p_signal, a.delay_n, a.has_memory());
    insecure = gamma.insecure;
    pt.tau = shrink_hybrid(pt.qber, gamma.value, a.delay_n);
  } else {
    const Fraction beta = single_photon_fraction(pt.p_click, poisson_multiphoton(s.mu));
    if (beta.insecure) {
      insecure = true;
      pt.tau = 0.0;
    } else {
      pt.tau = shrink_individual(pt.qber, beta.value, a.has_memory());
    }
  }

  pt.secure_rate_hz = key_rate(s.clock_hz, pt.p_click, pt.qber, pt.tau, pt.f_used);
  const double factor = dead_time_factor(s);
  pt.secure_rate_deadtime_hz = pt.secure_rate_hz * factor;
  if (factor < 1.0 - kDeadTimeFlagThreshold) pt.flags.set(RateFlag::deadtime_limited);
  if (insecure || pt.tau <= 0.0 || !(pt.secure_rate_deadtime_hz > 0.0)) {
    pt.flags.set(RateFlag::insecure);
  }
  return pt;
}

double bb84_reference(const LinkScenario& s) { return 0.5 * s.clock_hz * p_signal(s).value; }

double asymptotic_rate(const LinkScenario& s, const AttackModel& a) {
  const double signal = p_signal(s).value;
  const double survive = a.has_memory() ? 1.0 - 2.0 * s.mu : 1.0 - s.mu / a.delay_n;
  return s.clock_hz * survive * signal;
}

MuOptimum optimize_mu(const LinkScenario& s, const AttackModel& a, double lo, double hi,
                      const ErrorCorrection& ec) {
  if (!(lo > 0.0 && lo < hi && hi <= 1.0)) {
    throw DomainError("mu range must satisfy 0 < lo < hi <= 1");
  }
  LinkScenario trial = s;
  auto rate_at = [&](double mu) {
    trial.mu = mu;
    return secure_rate(trial, a, ec).secure_rate_deadtime_hz;
  };
  const ScalarOptimum best = golden_section_maximize(rate_at, lo, hi, 1e-6);

  MuOptimum out;
  out.mu = best.x;
  trial.mu = best.x;
  out.point = secure_rate(trial, a, ec);
  out.insecure = !(best.value > 0.0);
  return out;
}

double max_secure_distance(const LinkScenario& s, const AttackModel& a, double r_min,
                           const ErrorCorrection& ec) {
  if (!(r_min >= 0.0)) throw DomainError("minimum rate must be >= 0");
  auto secure_at = [&](double km) {
    return secure_rate(s.at_length(km), a, ec).secure_rate_deadtime_hz > r_min;
  };
  if (!secure_at(0.0)) throw InsecureError("no secure distance");

  double lo = 0.0;
  double hi = 1.0;
  while (secure_at(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > kMaxSearchKm) {
      throw NoFeasiblePointError("rate stays above the threshold beyond 1e5 km");
    }
  }
  return bisect_last_true(secure_at, lo, hi, 0.01);
}

}  // namespace dpsrk
