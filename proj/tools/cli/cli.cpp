#include "cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "dpsrk/detector.hpp"
#include "dpsrk/errors.hpp"
#include "dpsrk/montecarlo.hpp"
#include "dpsrk/number_format.hpp"
#include "dpsrk/plot_script.hpp"
#include "dpsrk/presets.hpp"
#include "dpsrk/rate.hpp"
#include "dpsrk/scenario_file.hpp"
#include "dpsrk/sweep.hpp"

namespace dpsrk::cli {

namespace {

constexpr double kMcSelfCheckZ = 5.0;
constexpr double kCaptionF = 1.16;

std::optional<std::filesystem::path> preset_dir() {
  if (const char* env = std::getenv("DPSRK_PRESET_DIR"); env && *env) return env;
  return std::nullopt;
}

// Options shared by every scenario-consuming subcommand.
struct ScenarioOptions {
  std::string scenario_path;
  std::string preset;
  std::string detector = "si";
  std::optional<int> delay_n;
  std::optional<std::string> attack;
  std::string f_mode = "table";
  double f_value = kCaptionF;

  void attach(CLI::App& cmd, bool allow_both_detectors = false) {
    auto* scen = cmd.add_option("--scenario", scenario_path, "Scenario file (key = value)");
    auto* pre = cmd.add_option("--preset", preset, "Built-in preset name (see `presets list`)");
    scen->excludes(pre);
    std::vector<std::string> detectors{"si", "ingaas"};
    if (allow_both_detectors) detectors.emplace_back("both");
    cmd.add_option("--detector", detector, "Detector variant for presets")
        ->check(CLI::IsMember(detectors))
        ->capture_default_str();
    cmd.add_option("--n", delay_n, "Bob's delay N")->check(CLI::PositiveNumber);
    cmd.add_option("--attack", attack, "individual_mem|individual_nomem|hybrid_mem|hybrid_nomem")
        ->check(CLI::IsMember({"individual_mem", "individual_nomem", "hybrid_mem", "hybrid_nomem"}));
    cmd.add_option("--f-mode", f_mode, "Error-correction cost: table (f(e) interpolated) or fixed")
        ->check(CLI::IsMember({"table", "fixed"}))
        ->capture_default_str();
    cmd.add_option("--f-value", f_value, "Constant f used with --f-mode fixed")
        ->capture_default_str();
  }

  ErrorCorrection error_correction() const {
    return f_mode == "fixed" ? ErrorCorrection::fixed(f_value) : ErrorCorrection::table();
  }

  std::vector<ScenarioFile> load() const {
    if (scenario_path.empty() == preset.empty()) {
      throw CLI::ValidationError("exactly one of --scenario or --preset is required");
    }
    if (!scenario_path.empty()) {
      ScenarioFile s = load_scenario(scenario_path);
      if (delay_n) s.delay_n = *delay_n;
      if (attack) s.attack = parse_attack_key(*attack, s.delay_n);
      s.attack.delay_n = s.delay_n;
      return {s};
    }
    const auto dir = preset_dir();
    std::vector<ScenarioFile> out;
    for (const char* d : {"ingaas", "si"}) {
      if (detector == d || detector == "both") {
        out.push_back(resolve_preset(preset, parse_detector_choice(d), delay_n, attack, dir));
      }
    }
    return out;
  }

  ScenarioFile load_one() const { return load().front(); }
};

void print_rate_point(std::ostream& out, const RatePoint& p) {
  auto row = [&out](const char* name, const std::string& value) {
    out << "  " << std::left << std::setw(22) << name << value << '\n';
  };
  row("L_km", format_double(p.length_km));
  row("p_signal", format_double(p.p_signal));
  row("p_dark", format_double(p.p_dark));
  row("p_click", format_double(p.p_click));
  row("qber", format_double(p.qber));
  row("tau", format_double(p.tau));
  row("f", format_double(p.f_used));
  row("sifted_bps", format_double(p.sifted_rate_hz));
  row("secure_bps", format_double(p.secure_rate_hz));
  row("secure_deadtime_bps", format_double(p.secure_rate_deadtime_hz));
  row("flags", p.flags.empty() ? "-" : p.flags.to_string());
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << content;
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

struct ZScore {
  double value = 0.0;
  bool defined = false;
};

// Score against the analytic variance so that degenerate estimates (0 or 1)
// at tiny n do not divide by zero.
ZScore z_score(double estimate, double analytic, std::uint64_t trials) {
  if (trials == 0) return {};
  const double var = analytic * (1.0 - analytic) / static_cast<double>(trials);
  if (!(var > 0.0)) return {estimate == analytic ? 0.0 : INFINITY, true};
  return {(estimate - analytic) / std::sqrt(var), true};
}

std::vector<int> parse_delay_set(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto v = parse_integer(tok);
    if (!v || *v < 1) throw CLI::ValidationError("--n-set", "invalid delay '" + tok + "'");
    out.push_back(static_cast<int>(*v));
  }
  if (out.empty()) throw CLI::ValidationError("--n-set", "empty delay set");
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"DPS-QKD secure key rate modelling"};
  app.name("dpsrk");
  app.require_subcommand(1);

  // rate
  ScenarioOptions rate_opts;
  double rate_length = 0.0;
  std::string rate_csv;
  auto* rate_cmd = app.add_subcommand("rate", "Secure key rate at one link length");
  rate_opts.attach(*rate_cmd);
  rate_cmd->add_option("--L", rate_length, "Link length [km]")->capture_default_str();
  rate_cmd->add_option("--csv", rate_csv, "Also write the point as a one-row CSV");

  // sweep
  ScenarioOptions sweep_opts;
  std::string sweep_axis = "distance";
  double sweep_lo = 0.0;
  double sweep_hi = 300.0;
  int sweep_steps = 301;
  double sweep_length = 0.0;
  std::string sweep_csv;
  auto* sweep_cmd = app.add_subcommand("sweep", "Rate table over distance, pump power or mu (CSV)");
  sweep_opts.attach(*sweep_cmd, true);
  sweep_cmd->add_option("--axis", sweep_axis, "distance|pump|mu")
      ->check(CLI::IsMember({"distance", "pump", "mu"}))
      ->capture_default_str();
  sweep_cmd->add_option("--lo", sweep_lo, "Grid start")->capture_default_str();
  sweep_cmd->add_option("--hi", sweep_hi, "Grid end")->capture_default_str();
  sweep_cmd->add_option("--steps", sweep_steps, "Number of grid points")->capture_default_str();
  sweep_cmd->add_option("--L", sweep_length, "Fixed length for pump/mu sweeps [km]");
  sweep_cmd->add_option("--csv", sweep_csv, "Output path (default: stdout)");

  // max-distance
  ScenarioOptions dist_opts;
  double r_min = 0.0;
  auto* dist_cmd = app.add_subcommand("max-distance", "Largest distance with rate above --rmin");
  dist_opts.attach(*dist_cmd);
  dist_cmd->add_option("--rmin", r_min, "Minimum dead-time-corrected rate [bit/s]")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  // optimize-mu
  ScenarioOptions mu_opts;
  double mu_length = 0.0;
  double mu_lo = 0.01;
  double mu_hi = 1.0;
  auto* mu_cmd = app.add_subcommand("optimize-mu", "Mean photon number maximising the rate");
  mu_opts.attach(*mu_cmd);
  mu_cmd->add_option("--L", mu_length, "Link length [km]")->capture_default_str();
  mu_cmd->add_option("--mu-lo", mu_lo, "Search range start")->capture_default_str();
  mu_cmd->add_option("--mu-hi", mu_hi, "Search range end")->capture_default_str();

  // optimize-pump
  std::string pump_scenario;
  double pump_lo = 1e-4;
  double pump_hi = 0.5;
  auto* pump_cmd =
      app.add_subcommand("optimize-pump", "Minimum-NEP pump power of the up-conversion detector");
  pump_cmd->add_option("--scenario", pump_scenario,
                       "Scenario with an upconv block (default: reference fit)");
  pump_cmd->add_option("--pump-lo", pump_lo, "Range start [mW]")->capture_default_str();
  pump_cmd->add_option("--pump-hi", pump_hi, "Range end [mW]")->capture_default_str();

  // mc
  ScenarioOptions mc_opts;
  double mc_length = 0.0;
  double mc_pulses = 1e6;
  std::uint64_t mc_seed = 1;
  std::string mc_mode = "link";
  int mc_m = 2;
  double mc_ir_fraction = 1.0;
  std::string mc_n_set;
  std::string mc_csv;
  auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo check of p_click and QBER");
  mc_opts.attach(*mc_cmd);
  mc_cmd->add_option("--L", mc_length, "Link length [km]")->capture_default_str();
  mc_cmd->add_option("--pulses", mc_pulses, "Number of simulated windows")->capture_default_str();
  mc_cmd->add_option("--seed", mc_seed, "64-bit seed")->capture_default_str();
  mc_cmd->add_option("--mode", mc_mode, "link|ir")
      ->check(CLI::IsMember({"link", "ir"}))
      ->capture_default_str();
  mc_cmd->add_option("--m", mc_m, "Eve's delay M (ir mode)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  mc_cmd->add_option("--ir-fraction", mc_ir_fraction, "Attacked fraction of windows (ir mode)")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  mc_cmd->add_option("--n-set", mc_n_set, "Comma-separated delays Bob draws from (ir mode)");
  mc_cmd->add_option("--csv", mc_csv, "Also write the result as CSV");

  // plot
  std::string plot_csv;
  std::string plot_out;
  auto* plot_cmd = app.add_subcommand("plot", "Emit a matplotlib script for a sweep CSV");
  plot_cmd->add_option("csv", plot_csv, "Sweep CSV produced by `sweep`")->required();
  plot_cmd->add_option("-o,--output", plot_out, "Script path (default: stdout)");

  // presets
  auto* presets_cmd = app.add_subcommand("presets", "Built-in figure presets");
  presets_cmd->require_subcommand(1);
  auto* list_cmd = presets_cmd->add_subcommand("list", "List preset names and parameters");
  std::string show_name;
  std::string show_detector = "si";
  int show_n = 100;
  std::string show_attack = "hybrid_nomem";
  auto* show_cmd = presets_cmd->add_subcommand("show", "Print a preset as a scenario file");
  show_cmd->add_option("name", show_name, "Preset name")->required();
  show_cmd->add_option("--detector", show_detector, "si|ingaas")
      ->check(CLI::IsMember({"si", "ingaas"}))
      ->capture_default_str();
  show_cmd->add_option("--n", show_n, "Bob's delay N")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  show_cmd->add_option("--attack", show_attack, "Attack key")
      ->check(CLI::IsMember({"individual_mem", "individual_nomem", "hybrid_mem", "hybrid_nomem"}))
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*rate_cmd) {
      const ScenarioFile s = rate_opts.load_one();
      const RatePoint p =
          secure_rate(s.link(rate_length), s.attack_model(), rate_opts.error_correction());
      out << "detector " << s.detector.name << ", attack " << attack_key(s.attack) << ", N "
          << s.delay_n << '\n';
      print_rate_point(out, p);
      if (!rate_csv.empty()) {
        SweepResult single;
        single.rows.push_back({s.detector.name, rate_length, p});
        std::ostringstream csv;
        write_csv(csv, single);
        write_file(rate_csv, csv.str());
      }
      return p.secure() ? kOk : kInsecure;
    }

    if (*sweep_cmd) {
      SweepRequest req{parse_sweep_axis(sweep_axis), sweep_lo, sweep_hi, sweep_steps,
                       sweep_length};
      const ErrorCorrection ec = sweep_opts.error_correction();
      std::vector<SweepResult> parts;
      for (const ScenarioFile& s : sweep_opts.load()) parts.push_back(sweep(s, req, ec));
      const SweepResult result = parts.size() == 1 ? parts.front() : merge_sweeps(parts);
      std::ostringstream csv;
      write_csv(csv, result);
      if (sweep_csv.empty()) {
        out << csv.str();
      } else {
        write_file(sweep_csv, csv.str());
      }
      return kOk;
    }

    if (*dist_cmd) {
      const ScenarioFile s = dist_opts.load_one();
      try {
        const double km =
            max_secure_distance(s.link(0.0), s.attack_model(), r_min, dist_opts.error_correction());
        out << "max secure distance: " << std::fixed << std::setprecision(2) << km << " km\n";
        return kOk;
      } catch (const InsecureError&) {
        out << "no secure distance\n";
        return kInsecure;
      }
    }

    if (*mu_cmd) {
      const ScenarioFile s = mu_opts.load_one();
      const MuOptimum opt = optimize_mu(s.link(mu_length), s.attack_model(), mu_lo, mu_hi,
                                        mu_opts.error_correction());
      out << "mu* " << format_double(opt.mu) << '\n';
      print_rate_point(out, opt.point);
      return opt.insecure ? kInsecure : kOk;
    }

    if (*pump_cmd) {
      UpConversionCurve curve = UpConversionCurve::reference();
      if (!pump_scenario.empty()) {
        const ScenarioFile s = load_scenario(pump_scenario);
        if (!s.upconv) throw CLI::ValidationError("--scenario", "scenario has no upconv block");
        curve = *s.upconv;
      }
      const PumpOperatingPoint op = optimize_pump(curve, pump_lo, pump_hi);
      out << "  " << std::left << std::setw(18) << "pump_mw" << format_double(op.pump_mw) << '\n'
          << "  " << std::setw(18) << "efficiency" << format_double(op.efficiency) << '\n'
          << "  " << std::setw(18) << "dark_rate_hz" << format_double(op.dark_rate_hz) << '\n'
          << "  " << std::setw(18) << "nep" << format_double(op.nep) << '\n'
          << "  " << std::setw(18) << "dark_per_window"
          << format_double(dark_per_window(op.dark_rate_hz, PerMode{curve.bandwidth_hz()}))
          << '\n';
      return kOk;
    }

    if (*mc_cmd) {
      if (!(mc_pulses >= 1.0) || mc_pulses > 1e15 || mc_pulses != std::floor(mc_pulses)) {
        throw CLI::ValidationError("--pulses", "must be a positive integer");
      }
      const ScenarioFile s = mc_opts.load_one();
      McConfig cfg;
      cfg.n_pulses = static_cast<std::uint64_t>(mc_pulses);
      cfg.seed = mc_seed;
      cfg.scenario = s.link(mc_length);
      cfg.eve_delay_m = mc_m;
      cfg.ir_fraction = mc_mode == "ir" ? mc_ir_fraction : 0.0;
      if (!mc_n_set.empty()) cfg.bob_delays = parse_delay_set(mc_n_set);

      McResult r;
      double click_ref = 0.0;
      double qber_ref = 0.0;
      if (mc_mode == "ir") {
        r = simulate_intercept_resend(cfg);
        click_ref = expected_intercept_resend_click(cfg);
        qber_ref = expected_intercept_resend_qber(cfg);
      } else {
        r = simulate_link(cfg);
        click_ref = p_click(cfg.scenario).value;
        qber_ref = qber(cfg.scenario);
      }
      const ZScore zc = z_score(r.p_click.value, click_ref, r.windows);
      const ZScore zq = z_score(r.qber.value, qber_ref, r.clicks);

      out << "mode " << mc_mode << ", windows " << r.windows << ", clicks " << r.clicks
          << ", errors " << r.errors << ", seed " << cfg.seed << '\n';
      out << "  " << std::left << std::setw(10) << "quantity" << std::setw(24) << "estimate"
          << std::setw(24) << "std_error" << std::setw(24) << "analytic" << "z\n";
      auto line = [&](const char* name, const Estimate& e, double ref, const ZScore& z) {
        out << "  " << std::setw(10) << name << std::setw(24) << format_double(e.value)
            << std::setw(24) << format_double(e.standard_error) << std::setw(24)
            << format_double(ref) << (z.defined ? format_double(z.value) : "n/a") << '\n';
      };
      line("p_click", r.p_click, click_ref, zc);
      line("qber", r.qber, qber_ref, zq);
      ZScore za;
      double attacked_ref = 0.0;
      if (mc_mode == "ir") {
        attacked_ref = expected_attacked_qber(cfg);
        za = z_score(r.attacked_qber.value, attacked_ref, r.attacked_clicks);
        line("attacked", r.attacked_qber, attacked_ref, za);
      }

      if (!mc_csv.empty()) {
        std::ostringstream csv;
        csv << "mode,seed,windows,clicks,errors,p_click_hat,p_click_se,p_click_analytic,"
               "qber_hat,qber_se,qber_analytic,attacked_clicks,attacked_errors\n"
            << mc_mode << ',' << cfg.seed << ',' << r.windows << ',' << r.clicks << ','
            << r.errors << ',' << format_double(r.p_click.value) << ','
            << format_double(r.p_click.standard_error) << ',' << format_double(click_ref) << ','
            << format_double(r.qber.value) << ',' << format_double(r.qber.standard_error) << ','
            << format_double(qber_ref) << ',' << r.attacked_clicks << ',' << r.attacked_errors
            << '\n';
        write_file(mc_csv, csv.str());
      }

      for (const ZScore& z : {zc, zq, za}) {
        if (z.defined && !(std::abs(z.value) <= kMcSelfCheckZ)) {
          err << "self-check failed: |z| > " << kMcSelfCheckZ << '\n';
          return kSelfCheck;
        }
      }
      return kOk;
    }

    if (*plot_cmd) {
      std::ifstream in(plot_csv, std::ios::binary);
      if (!in) throw ParseError(plot_csv, 0, 0, "cannot open CSV");
      const CsvLayout layout = inspect_sweep_csv(in, plot_csv);
      const std::string script = make_plot_script(plot_csv, layout);
      if (plot_out.empty()) {
        out << script;
      } else {
        write_file(plot_out, script);
      }
      return kOk;
    }

    if (*list_cmd) {
      out << "name    mu     nu       d1        (b, f, eta1/eta2, alpha, L_r1/L_r2, d2, "
             "t_d1/t_d2, N)\n";
      for (const CaptionParameters& p : PresetRegistry::builtin().all()) {
        out << std::left << std::setw(8) << p.name << std::setw(7) << format_double(p.mu)
            << std::setw(9) << format_double(p.nu) << std::setw(10) << format_double(p.d1)
            << format_double(p.b) << ", " << format_double(p.f) << ", "
            << format_double(p.eta1) << '/' << format_double(p.eta2) << ", "
            << format_double(p.alpha) << ", " << format_double(p.lr1) << '/'
            << format_double(p.lr2) << ", " << format_double(p.d2) << ", "
            << format_double(p.td1) << '/' << format_double(p.td2) << ", {" << p.delays[0]
            << ',' << p.delays[1] << ',' << p.delays[2] << "}\n";
      }
      if (const char* env = std::getenv("DPSRK_PRESET_DIR"); env && *env) {
        out << "preset files in " << env << " shadow built-ins of the same name\n";
      }
      return kOk;
    }

    if (*show_cmd) {
      out << serialize_scenario(resolve_preset(show_name, parse_detector_choice(show_detector),
                                               show_n, show_attack, preset_dir()));
      return kOk;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace dpsrk::cli
