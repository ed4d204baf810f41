#include "dpsrk/presets.hpp"

#include "dpsrk/errors.hpp"

namespace dpsrk {

namespace {

CaptionParameters caption(std::string name, double mu, double nu, double d1) {
  return {std::move(name), 0.01, mu, 1.16, nu, 0.155, 0.35, 0.21, 3.0, 2.1, d1, 3.5e-8,
          {1, 10, 100}, 200e-9, 45e-9};
}

}  // namespace

const char* to_string(DetectorChoice d) { return d == DetectorChoice::si ? "si" : "ingaas"; }

DetectorChoice parse_detector_choice(const std::string& text) {
  if (text == "si") return DetectorChoice::si;
  if (text == "ingaas") return DetectorChoice::ingaas;
  throw DomainError("unknown detector '" + text + "' (expected si|ingaas)");
}

const PresetRegistry& PresetRegistry::builtin() {
  static const PresetRegistry registry([] {
    std::vector<CaptionParameters> p{
        caption("fig3", 0.2, 1e9, 9.2e-6),
        caption("fig4", 0.77, 10e9, 2.0e-3),
        caption("fig5", 0.2, 10e9, 2.0e-3),
        caption("fig6", 0.77, 1e9, 9.2e-6),
        caption("fig7", 0.2, 10e9, 9.2e-6),
        caption("fig8", 0.77, 1e9, 2.0e-3),
        caption("fig9", 0.05, 1e9, 9.2e-6),
        caption("fig10", 0.05, 10e9, 9.2e-6),
        caption("fig11", 0.77, 10e9, 9.2e-6),
        caption("fig12", 0.2, 1e9, 2.0e-3),
    };
    CaptionParameters text = caption("text", 0.2, 1e9, 9.2e-6);
    text.alpha = 0.2;
    text.lr1 = 1.0;
    text.lr2 = 1.0;
    p.push_back(text);
    return p;
  }());
  return registry;
}

std::vector<std::string> PresetRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& p : presets_) out.push_back(p.name);
  return out;
}

const CaptionParameters* PresetRegistry::find(const std::string& name) const {
  for (const auto& p : presets_) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

ScenarioFile PresetRegistry::scenario(const std::string& name, DetectorChoice detector,
                                      int delay_n, const std::string& attack) const {
  const CaptionParameters* p = find(name);
  if (!p) throw DomainError("unknown preset '" + name + "'");
  ScenarioFile s;
  s.mu = p->mu;
  s.alpha_db_per_km = p->alpha;
  s.clock_hz = p->nu;
  s.baseline_error = p->b;
  s.delay_n = delay_n;
  s.attack = parse_attack_key(attack, delay_n);
  s.delta = 1.0;
  if (detector == DetectorChoice::si) {
    s.detector = {"Si-APD", p->eta2, p->d2, p->td2, p->lr2, GatingMode::nongated};
  } else {
    s.detector = {"InGaAs-APD", p->eta1, p->d1, p->td1, p->lr1, GatingMode::gated};
  }
  return s;
}

std::filesystem::path preset_file(const std::filesystem::path& dir, const std::string& name,
                                  DetectorChoice detector) {
  return dir / (name + "-" + to_string(detector) + ".scenario");
}

ScenarioFile resolve_preset(const std::string& name, DetectorChoice detector,
                            std::optional<int> delay_n, std::optional<std::string> attack,
                            const std::optional<std::filesystem::path>& override_dir) {
  if (override_dir) {
    const auto path = preset_file(*override_dir, name, detector);
    if (std::filesystem::exists(path)) {
      ScenarioFile s = load_scenario(path);
      if (delay_n) s.delay_n = *delay_n;
      if (attack) s.attack = parse_attack_key(*attack, s.delay_n);
      s.attack.delay_n = s.delay_n;
      return s;
    }
  }
  const CaptionParameters* p = PresetRegistry::builtin().find(name);
  if (!p) throw DomainError("unknown preset '" + name + "'");
  return PresetRegistry::builtin().scenario(name, detector, delay_n.value_or(p->delays.back()),
                                            attack.value_or("hybrid_nomem"));
}

}  // namespace dpsrk
