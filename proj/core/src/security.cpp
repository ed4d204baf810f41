#include "dpsrk/security.hpp"

#include <algorithm>
#include <cmath>

#include "dpsrk/errors.hpp"
#include "dpsrk/link.hpp"

namespace dpsrk {

namespace {

void check_delay(int delay_n) {
  if (delay_n < 1) throw DomainError("delay N must be >= 1");
}

Fraction clamp_fraction(double value) {
  if (value <= 0.0) return {0.0, true};
  return {value, false};
}

}  // namespace

void AttackModel::validate() const { check_delay(delay_n); }

std::string attack_key(const AttackModel& attack) {
  switch (attack.kind) {
    case AttackKind::individual_with_memory:
      return "individual_mem";
    case AttackKind::individual_no_memory:
      return "individual_nomem";
    case AttackKind::hybrid_bs_ir:
      return attack.eve_memory ? "hybrid_mem" : "hybrid_nomem";
  }
  return "hybrid_nomem";
}

AttackModel parse_attack_key(const std::string& key, int delay_n) {
  AttackModel a;
  a.delay_n = delay_n;
  if (key == "individual_mem") {
    a.kind = AttackKind::individual_with_memory;
    a.eve_memory = true;
  } else if (key == "individual_nomem") {
    a.kind = AttackKind::individual_no_memory;
  } else if (key == "hybrid_mem") {
    a.kind = AttackKind::hybrid_bs_ir;
    a.eve_memory = true;
  } else if (key == "hybrid_nomem") {
    a.kind = AttackKind::hybrid_bs_ir;
  } else {
    throw DomainError("unknown attack '" + key +
                      "' (expected individual_mem|individual_nomem|hybrid_mem|hybrid_nomem)");
  }
  a.validate();
  return a;
}

ECTable::ECTable(std::vector<Breakpoint> breakpoints) : points_(std::move(breakpoints)) {
  if (points_.empty()) throw DomainError("error-correction table is empty");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!(points_[i].f >= 1.0)) throw DomainError("error-correction f(e) must be >= 1");
    if (i > 0 && !(points_[i].error > points_[i - 1].error)) {
      throw DomainError("error-correction breakpoints must be strictly increasing");
    }
  }
}

const ECTable& ECTable::reference() {
  static const ECTable table({{0.01, 1.16}, {0.05, 1.16}, {0.1, 1.22}, {0.15, 1.35}});
  return table;
}

double f_ec(const ECTable& table, double e) {
  if (!(e >= 0.0)) throw DomainError("error rate must be >= 0");
  const auto& pts = table.breakpoints();
  if (e > pts.back().error) {
    throw AboveCorrectionRangeError("error rate " + std::to_string(e) +
                                    " is above the error-correction range");
  }
  if (e <= pts.front().error) return pts.front().f;
  const auto upper = std::lower_bound(pts.begin(), pts.end(), e,
                                      [](const auto& p, double v) { return p.error < v; });
  if (upper->error == e) return upper->f;
  const auto lower = upper - 1;
  const double t = (e - lower->error) / (upper->error - lower->error);
  return lower->f + t * (upper->f - lower->f);
}

ErrorCorrection ErrorCorrection::table(const ECTable& t) {
  ErrorCorrection ec;
  ec.table_ = t;
  return ec;
}

ErrorCorrection ErrorCorrection::fixed(double f) {
  if (!(f >= 1.0)) throw DomainError("fixed error-correction f must be >= 1");
  ErrorCorrection ec;
  ec.fixed_ = f;
  return ec;
}

std::optional<double> ErrorCorrection::efficiency(double e) const {
  if (!table_) return fixed_;
  if (e > table_->max_error()) return std::nullopt;
  return f_ec(*table_, e);
}

double poisson_multiphoton(double mu) {
  if (!(mu >= 0.0)) throw DomainError("mu must be >= 0");
  // 1 - (1+mu)e^{-mu} = -(expm1(-mu) + mu e^{-mu}); avoids cancellation at small mu.
  return -std::expm1(-mu) - mu * std::exp(-mu);
}

Fraction single_photon_fraction(double p_click, double p_m) {
  if (!(p_click > 0.0)) {
    throw ModelRangeError("single-photon fraction is undefined when p_click == 0");
  }
  const double beta = (p_click - p_m) / p_click;
  return {beta, beta <= 0.0};
}

double shrink_individual(double e, double beta, bool eve_memory) {
  if (!(beta > 0.0)) throw InsecureError("single-photon fraction is not positive");
  if (beta > 1.0) throw DomainError("single-photon fraction must be <= 1");
  if (!(e >= 0.0)) throw DomainError("error rate must be >= 0");
  if (eve_memory) {
    const double x = e / beta;
    // The bracket peaks at 1 when x = 1/2.
    if (x >= 0.5) return 0.0;
    const double arg = 0.5 + 2.0 * x - 2.0 * x * x;
    return std::max(0.0, -beta * std::log2(arg));
  }
  const double y = e / (1.0 + beta);
  if (y >= 0.25) return 0.0;
  const double arg = 0.5 + 4.0 * y - 8.0 * y * y;
  return std::max(0.0, -0.5 * (1.0 + beta) * std::log2(arg));
}

double bs_transmission(const DetectorSpec& detector, double alpha_db_per_km, double length_km) {
  return detector.efficiency * channel_transmittance(detector, alpha_db_per_km, length_km);
}

Fraction surviving_fraction(double mu, double p_signal, int delay_n, bool eve_memory) {
  if (!(mu > 0.0)) throw DomainError("mu must be > 0");
  check_delay(delay_n);
  if (eve_memory) return clamp_fraction(1.0 - 2.0 * mu + 2.0 * p_signal);
  const double n = delay_n;
  return clamp_fraction(1.0 - mu / n + p_signal / n);
}

Fraction surviving_fraction_bs(double mu, double eta_bs, int delay_n, bool eve_memory) {
  if (!(mu > 0.0)) throw DomainError("mu must be > 0");
  if (!(eta_bs >= 0.0 && eta_bs <= 1.0)) throw DomainError("eta_BS must lie in [0, 1]");
  check_delay(delay_n);
  if (eve_memory) return clamp_fraction(1.0 - 2.0 * mu * (1.0 - eta_bs));
  return clamp_fraction(1.0 - mu * (1.0 - eta_bs) / delay_n);
}

double shrink_hybrid(double e, double gamma, int delay_n) {
  check_delay(delay_n);
  const double n = delay_n;
  return std::max(0.0, gamma - e / (n * (1.0 - 1.0 / (2.0 * n))));
}

double ir_error_floor(int delay_n) {
  check_delay(delay_n);
  return 0.5 * (1.0 - 1.0 / (2.0 * delay_n));
}

}  // namespace dpsrk
