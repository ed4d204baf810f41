#pragma once

// Privacy-amplification and error-correction terms for DPS-QKD under
// individual (photon-number-splitting) attacks and the hybrid beam-splitter +
// intercept-resend attack.

#include <optional>
#include <string>
#include <vector>

#include "dpsrk/detector.hpp"

namespace dpsrk {

enum class AttackKind { individual_with_memory, individual_no_memory, hybrid_bs_ir };

struct AttackModel {
  AttackKind kind = AttackKind::hybrid_bs_ir;
  // Only consulted for hybrid_bs_ir; the individual kinds fix it themselves.
  bool eve_memory = false;
  int delay_n = 1;

  bool has_memory() const noexcept {
    return kind == AttackKind::individual_with_memory ||
           (kind == AttackKind::hybrid_bs_ir && eve_memory);
  }
  bool is_hybrid() const noexcept { return kind == AttackKind::hybrid_bs_ir; }

  void validate() const;

  bool operator==(const AttackModel&) const = default;
};

// Scenario-file spelling: individual_mem | individual_nomem | hybrid_mem | hybrid_nomem.
std::string attack_key(const AttackModel& attack);
AttackModel parse_attack_key(const std::string& key, int delay_n);

// Error-correction inefficiency f(e) sampled at increasing QBER breakpoints.
class ECTable {
 public:
  struct Breakpoint {
    double error;
    double f;
  };

  explicit ECTable(std::vector<Breakpoint> breakpoints);

  // Cascade-style inefficiencies: (0.01, 1.16) (0.05, 1.16) (0.1, 1.22) (0.15, 1.35).
  static const ECTable& reference();

  const std::vector<Breakpoint>& breakpoints() const noexcept { return points_; }
  double max_error() const noexcept { return points_.back().error; }

 private:
  std::vector<Breakpoint> points_;
};

// Piecewise-linear in e, flat below the first breakpoint. Throws
// AboveCorrectionRangeError past the last one.
double f_ec(const ECTable& table, double e);

// Either the tabulated f(e) or a constant f with no upper QBER limit.
class ErrorCorrection {
 public:
  static ErrorCorrection table(const ECTable& t = ECTable::reference());
  static ErrorCorrection fixed(double f);

  // nullopt when e is past the correctable range.
  std::optional<double> efficiency(double e) const;

  bool is_fixed() const noexcept { return !table_.has_value(); }

 private:
  std::optional<ECTable> table_;
  double fixed_ = 1.0;
};

// Poisson multiphoton probability 1 - (1 + mu) e^{-mu}.
double poisson_multiphoton(double mu);

// A fraction that may have been driven to (or below) zero.
struct Fraction {
  double value = 0.0;
  bool insecure = false;
};

// beta = (p_click - p_m) / p_click. Non-positive values are returned as-is
// and flagged insecure (PNS attack recovers the whole key).
Fraction single_photon_fraction(double p_click, double p_m);

// Individual-attack shrinking factor. With memory:
//   -beta log2[1/2 + 2(e/beta) - 2(e/beta)^2]
// without (Eve measures immediately in a random basis):
//   -(1+beta)/2 log2[1/2 + 4(e/(1+beta)) - 8(e/(1+beta))^2].
// Once the bracket reaches its maximum of 1 no secret bits remain and 0 is
// returned. Throws InsecureError for beta <= 0.
double shrink_individual(double e, double beta, bool eve_memory);

// eta 10^{-(alpha L + L_r)/10}: the tap transmission that keeps Bob's count
// rate unchanged after Eve swaps in a lossless channel.
double bs_transmission(const DetectorSpec& detector, double alpha_db_per_km, double length_km);

// Fraction of bits Eve does not learn from the beam-splitter part, written
// with p_signal: 1 - mu/N + p_signal/N, or 1 - 2 mu + 2 p_signal with memory.
Fraction surviving_fraction(double mu, double p_signal, int delay_n, bool eve_memory);

// The same quantity written with eta_BS: 1 - mu(1 - eta_BS)/N or 1 - 2 mu(1 - eta_BS).
Fraction surviving_fraction_bs(double mu, double eta_bs, int delay_n, bool eve_memory);

// Hybrid shrinking factor gamma - e / (N (1 - 1/(2N))), clamped at 0.
double shrink_hybrid(double e, double gamma, int delay_n);

// Error induced on a pulse pair measured with a mismatched delay:
// (1 - 1/(2N)) / 2.
double ir_error_floor(int delay_n);

}  // namespace dpsrk
