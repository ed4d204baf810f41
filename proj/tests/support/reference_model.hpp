#pragma once

// Independent long-double restatement of the rate equations, written from the
// formulas rather than from the library, for use as a test oracle. It shares
// no code with dpsrk::core.

#include <cmath>
#include <optional>

namespace dpsrk::testing {

struct RefParams {
  long double mu = 0.2L;
  long double nu = 1e9L;
  long double eta = 0.35L;
  long double d = 3.5e-8L;
  long double lr = 2.1L;
  long double td = 45e-9L;
  long double alpha = 0.21L;
  long double b = 0.01L;
  int n = 100;
  bool memory = false;
  long double delta = 1.0L;
  // nullopt: tabulated f(e) with its 0.15 cut-off.
  std::optional<long double> fixed_f;
};

inline long double ref_p_signal(const RefParams& p, long double km) {
  return p.mu * p.eta * std::pow(10.0L, -(p.alpha * km + p.lr) / 10.0L);
}

inline long double ref_entropy(long double e) {
  if (e <= 0.0L || e >= 1.0L) return 0.0L;
  return -(e * std::log2(e) + (1.0L - e) * std::log2(1.0L - e));
}

// Table: (0.01,1.16) (0.05,1.16) (0.1,1.22) (0.15,1.35), flat below 0.01.
inline std::optional<long double> ref_f(long double e) {
  if (e > 0.15L) return std::nullopt;
  if (e <= 0.05L) return 1.16L;
  if (e <= 0.1L) return 1.16L + (e - 0.05L) * (0.06L / 0.05L);
  return 1.22L + (e - 0.1L) * (0.13L / 0.05L);
}

// Hybrid-attack rate; dead-time corrected when `dead_time` is set.
inline long double ref_hybrid_rate(const RefParams& p, long double km, bool dead_time = true) {
  const long double ps = ref_p_signal(p, km);
  const long double pd = 2.0L * p.d;
  const long double pc = ps + pd;
  if (pc <= 0.0L) return 0.0L;
  const long double e = (0.5L * pd + p.b * ps) / pc;
  long double f;
  if (p.fixed_f) {
    f = *p.fixed_f;
  } else {
    const auto tf = ref_f(e);
    if (!tf) return 0.0L;
    f = *tf;
  }
  long double gamma = p.memory ? 1.0L - 2.0L * p.mu * (1.0L - ps / p.mu)
                               : 1.0L - p.mu * (1.0L - ps / p.mu) / p.n;
  if (gamma < 0.0L) gamma = 0.0L;
  long double tau = gamma - e / (p.n - 0.5L);
  if (tau < 0.0L) tau = 0.0L;
  long double r = p.nu * pc * (tau - f * ref_entropy(e));
  if (r < 0.0L) r = 0.0L;
  if (dead_time) r *= std::exp(-p.delta * p.nu * pc * p.td);
  return r;
}

// Last point of a uniform `step` grid on [0, max_km] with a positive rate.
inline long double ref_sweep_max_distance(const RefParams& p, long double step = 0.1L,
                                          long double max_km = 1000.0L,
                                          long double r_min = 0.0L) {
  long double last = -1.0L;
  const int n = static_cast<int>(max_km / step);
  for (int i = 0; i <= n; ++i) {
    const long double km = step * i;
    if (ref_hybrid_rate(p, km) > r_min) last = km;
  }
  return last;
}

}  // namespace dpsrk::testing
