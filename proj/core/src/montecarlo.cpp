#include "dpsrk/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "dpsrk/errors.hpp"
#include "dpsrk/security.hpp"

namespace dpsrk {

namespace {

enum Purpose : std::uint64_t { kLinkStream = 0, kAttackStream = 1 };

struct Counts {
  std::uint64_t clicks = 0;
  std::uint64_t errors = 0;
  std::uint64_t attacked_clicks = 0;
  std::uint64_t attacked_errors = 0;
};

struct WindowModel {
  double p_signal;
  double click_threshold;  // P(signal click) + P(dark click only); one draw decides both
  double baseline_error;
  double ir_fraction;
  int eve_delay_m;
  std::vector<int> bob_delays;
  std::vector<double> mismatch_error;  // per entry of bob_delays
};

WindowModel make_model(const McConfig& cfg, bool attack) {
  cfg.validate();
  WindowModel m;
  m.p_signal = p_signal(cfg.scenario).value;
  const double dark = p_dark(cfg.scenario);
  m.click_threshold = m.p_signal + (1.0 - m.p_signal) * dark;
  m.baseline_error = cfg.scenario.baseline_error;
  m.ir_fraction = attack ? cfg.ir_fraction : 0.0;
  m.eve_delay_m = cfg.eve_delay_m;
  m.bob_delays = cfg.bob_delays.empty() ? std::vector<int>{cfg.scenario.delay_n} : cfg.bob_delays;
  for (const int n : m.bob_delays) {
    m.mismatch_error.push_back(n == m.eve_delay_m ? 0.0 : ir_error_floor(n));
  }
  return m;
}

Counts run_chunk(const WindowModel& m, std::uint64_t seed, std::uint64_t chunk,
                 std::uint64_t windows) {
  SplitMix64 link = SplitMix64::substream(seed, chunk, kLinkStream);
  SplitMix64 attack = SplitMix64::substream(seed, chunk, kAttackStream);
  Counts c;
  for (std::uint64_t w = 0; w < windows; ++w) {
    if (m.ir_fraction > 0.0 && attack.uniform() < m.ir_fraction) {
      const std::uint64_t pick = attack.below(m.bob_delays.size());
      ++c.clicks;
      ++c.attacked_clicks;
      if (attack.uniform() < m.mismatch_error[pick]) {
        ++c.errors;
        ++c.attacked_errors;
      }
      continue;
    }
    const double u = link.uniform();
    if (u < m.p_signal) {
      ++c.clicks;
      if (link.uniform() < m.baseline_error) ++c.errors;
    } else if (u < m.click_threshold) {
      ++c.clicks;
      if (link.uniform() < 0.5) ++c.errors;
    }
  }
  return c;
}

Estimate binomial(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return {};
  const double p = static_cast<double>(successes) / static_cast<double>(trials);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials))};
}

McResult run(const McConfig& cfg, bool attack, unsigned workers) {
  const WindowModel model = make_model(cfg, attack);
  const std::uint64_t n_chunks = (cfg.n_pulses + kChunkWindows - 1) / kChunkWindows;
  std::vector<Counts> per_chunk(n_chunks);

  auto work = [&](std::atomic<std::uint64_t>& next) {
    for (std::uint64_t c = next++; c < n_chunks; c = next++) {
      const std::uint64_t begin = c * kChunkWindows;
      const std::uint64_t size = std::min(kChunkWindows, cfg.n_pulses - begin);
      per_chunk[c] = run_chunk(model, cfg.seed, c, size);
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, n_chunks));
  std::atomic<std::uint64_t> next{0};
  if (workers <= 1) {
    work(next);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back([&] { work(next); });
  }

  McResult r;
  r.windows = cfg.n_pulses;
  for (const Counts& c : per_chunk) {
    r.clicks += c.clicks;
    r.errors += c.errors;
    r.attacked_clicks += c.attacked_clicks;
    r.attacked_errors += c.attacked_errors;
  }
  r.p_click = binomial(r.clicks, r.windows);
  r.qber = binomial(r.errors, r.clicks);
  r.attacked_qber = binomial(r.attacked_errors, r.attacked_clicks);
  return r;
}

}  // namespace

SplitMix64 SplitMix64::substream(std::uint64_t seed, std::uint64_t chunk, std::uint64_t purpose) {
  std::uint64_t key = mix(seed + kGamma);
  key = mix(key ^ (chunk * 0xd1342543de82ef95ULL + 1));
  key = mix(key ^ (purpose * 0xaf251af3b0f025b5ULL + 1));
  return SplitMix64(key);
}

std::uint64_t SplitMix64::below(std::uint64_t n) noexcept {
  // Reject the low residue class so every value is equally likely.
  const std::uint64_t threshold = (0 - n) % n;
  while (true) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % n;
  }
}

void McConfig::validate() const {
  if (n_pulses < 1) throw DomainError("at least one pulse is required");
  scenario.validate();
  if (!(ir_fraction >= 0.0 && ir_fraction <= 1.0)) {
    throw DomainError("intercept-resend fraction must lie in [0, 1]");
  }
  if (eve_delay_m < 1) throw DomainError("Eve's delay M must be >= 1");
  for (const int n : bob_delays) {
    if (n < 1) throw DomainError("Bob's delays must be >= 1");
  }
}

McResult simulate_link(const McConfig& cfg, unsigned workers) { return run(cfg, false, workers); }

McResult simulate_intercept_resend(const McConfig& cfg, unsigned workers) {
  return run(cfg, true, workers);
}

double expected_attacked_qber(const McConfig& cfg) {
  const std::vector<int> delays =
      cfg.bob_delays.empty() ? std::vector<int>{cfg.scenario.delay_n} : cfg.bob_delays;
  double sum = 0.0;
  for (const int n : delays) {
    if (n != cfg.eve_delay_m) sum += ir_error_floor(n);
  }
  return sum / static_cast<double>(delays.size());
}

double expected_intercept_resend_click(const McConfig& cfg) {
  const double signal = p_signal(cfg.scenario).value;
  const double dark = p_dark(cfg.scenario);
  const double link_click = signal + (1.0 - signal) * dark;
  return cfg.ir_fraction + (1.0 - cfg.ir_fraction) * link_click;
}

double expected_intercept_resend_qber(const McConfig& cfg) {
  const double signal = p_signal(cfg.scenario).value;
  const double dark = p_dark(cfg.scenario);
  const double link_errors =
      signal * cfg.scenario.baseline_error + (1.0 - signal) * dark * 0.5;
  const double errors =
      cfg.ir_fraction * expected_attacked_qber(cfg) + (1.0 - cfg.ir_fraction) * link_errors;
  return errors / expected_intercept_resend_click(cfg);
}

}  // namespace dpsrk
