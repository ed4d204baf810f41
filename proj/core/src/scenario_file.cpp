#include "dpsrk/scenario_file.hpp"

#include <array>
#include <fstream>
#include <map>
#include <sstream>

#include "dpsrk/errors.hpp"
#include "dpsrk/number_format.hpp"

namespace dpsrk {

namespace {

constexpr std::array<std::string_view, 21> kKnownKeys{
    "mu",
    "alpha_db_per_km",
    "clock_hz",
    "baseline_error",
    "delay_n",
    "attack",
    "delta",
    "detector.name",
    "detector.mode",
    "detector.efficiency",
    "detector.dark_per_window",
    "detector.dead_time_s",
    "detector.receiver_loss_db",
    "upconv.a1",
    "upconv.a2",
    "upconv.b0",
    "upconv.b1",
    "upconv.b2",
    "upconv.b3",
    "upconv.b4",
    "upconv.bandwidth_hz",
};

constexpr std::array<std::string_view, 8> kCurveKeys{
    "upconv.a1", "upconv.a2", "upconv.b0", "upconv.b1",
    "upconv.b2", "upconv.b3", "upconv.b4", "upconv.bandwidth_hz",
};

struct Entry {
  std::string value;
  int line;
  int column;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool is_known(std::string_view key) {
  if (key == "upconv.pump_mw") return true;
  for (const auto k : kKnownKeys) {
    if (k == key) return true;
  }
  return false;
}

class Reader {
 public:
  Reader(std::map<std::string, Entry> entries, std::string source)
      : entries_(std::move(entries)), source_(std::move(source)) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  const Entry& entry(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) {
      throw ParseError(source_, 0, 0, "missing required key '" + key + "'");
    }
    return it->second;
  }

  double number(const std::string& key) const {
    const Entry& e = entry(key);
    const auto v = parse_double(e.value);
    if (!v) {
      throw ParseError(source_, e.line, e.column,
                       "invalid number for key '" + key + "': '" + e.value + "'");
    }
    return *v;
  }

  int integer(const std::string& key) const {
    const Entry& e = entry(key);
    const auto v = parse_integer(e.value);
    if (!v || *v < 1 || *v > 1'000'000'000) {
      throw ParseError(source_, e.line, e.column,
                       "invalid positive integer for key '" + key + "': '" + e.value + "'");
    }
    return static_cast<int>(*v);
  }

  template <class F>
  auto checked(const std::string& key, F&& f) const {
    try {
      return f();
    } catch (const DomainError& err) {
      const Entry& e = entry(key);
      throw ParseError(source_, e.line, e.column, "key '" + key + "': " + err.what());
    }
  }

  const std::string& source() const { return source_; }

 private:
  std::map<std::string, Entry> entries_;
  std::string source_;
};

}  // namespace

DetectorSpec ScenarioFile::effective_detector() const {
  if (upconv && pump_mw) {
    return make_detector_from_upconversion(*upconv, *pump_mw, detector.dead_time_s,
                                           detector.receiver_loss_db, detector.name);
  }
  return detector;
}

AttackModel ScenarioFile::attack_model() const {
  AttackModel a = attack;
  a.delay_n = delay_n;
  return a;
}

LinkScenario ScenarioFile::link(double length_km) const {
  LinkScenario s;
  s.mu = mu;
  s.alpha_db_per_km = alpha_db_per_km;
  s.length_km = length_km;
  s.clock_hz = clock_hz;
  s.baseline_error = baseline_error;
  s.detector = effective_detector();
  s.delay_n = delay_n;
  s.dead_time_delta = delta;
  return s;
}

ScenarioFile parse_scenario(std::string_view text, const std::string& source) {
  std::map<std::string, Entry> entries;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    const int indent = static_cast<int>(raw.find_first_not_of(" \t"));
    if (eq == std::string_view::npos) {
      throw ParseError(source, line_no, indent + 1, "expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value_part = line.substr(eq + 1);
    const std::string value(trim(value_part));
    const int value_col = indent + static_cast<int>(eq) + 2 +
                          static_cast<int>(value_part.find_first_not_of(" \t") ==
                                                   std::string_view::npos
                                               ? 0
                                               : value_part.find_first_not_of(" \t"));
    if (key.empty()) throw ParseError(source, line_no, indent + 1, "empty key");
    if (!is_known(key)) {
      throw ParseError(source, line_no, indent + 1, "unknown key '" + key + "'");
    }
    if (entries.count(key)) {
      throw ParseError(source, line_no, indent + 1, "duplicate key '" + key + "'");
    }
    entries.emplace(key, Entry{value, line_no, value_col});
  }

  const Reader r(std::move(entries), source);
  ScenarioFile s;
  s.mu = r.number("mu");
  s.alpha_db_per_km = r.number("alpha_db_per_km");
  s.clock_hz = r.number("clock_hz");
  s.baseline_error = r.number("baseline_error");
  s.delay_n = r.integer("delay_n");
  s.attack = r.checked("attack", [&] { return parse_attack_key(r.entry("attack").value, s.delay_n); });
  if (r.has("delta")) s.delta = r.number("delta");

  if (r.has("detector.name")) {
    const Entry& e = r.entry("detector.name");
    if (e.value.find_first_of(",\"") != std::string::npos) {
      throw ParseError(source, e.line, e.column, "detector.name may not contain ',' or '\"'");
    }
    s.detector.name = e.value;
  }
  if (r.has("detector.mode")) {
    s.detector.mode =
        r.checked("detector.mode", [&] { return parse_gating_mode(r.entry("detector.mode").value); });
  }
  s.detector.dead_time_s = r.number("detector.dead_time_s");
  s.detector.receiver_loss_db = r.number("detector.receiver_loss_db");

  int curve_keys = 0;
  for (const auto k : kCurveKeys) curve_keys += r.has(std::string(k)) ? 1 : 0;
  if (curve_keys != 0 && curve_keys != static_cast<int>(kCurveKeys.size())) {
    throw ParseError(source, 0, 0, "up-conversion block needs all of a1, a2, b0..b4, bandwidth_hz");
  }
  if (curve_keys != 0) {
    const std::array<double, 5> b{r.number("upconv.b0"), r.number("upconv.b1"),
                                  r.number("upconv.b2"), r.number("upconv.b3"),
                                  r.number("upconv.b4")};
    const double a1 = r.number("upconv.a1");
    const double a2 = r.number("upconv.a2");
    const double bw = r.number("upconv.bandwidth_hz");
    try {
      s.upconv.emplace(a1, a2, b, bw);
    } catch (const std::exception& err) {
      const Entry& e = r.entry("upconv.a1");
      throw ParseError(source, e.line, e.column, std::string("invalid up-conversion fit: ") + err.what());
    }
  }
  if (r.has("upconv.pump_mw")) {
    if (!s.upconv) {
      const Entry& e = r.entry("upconv.pump_mw");
      throw ParseError(source, e.line, e.column, "upconv.pump_mw requires the up-conversion fit");
    }
    s.pump_mw = r.number("upconv.pump_mw");
    for (const char* k : {"detector.efficiency", "detector.dark_per_window"}) {
      if (r.has(k)) {
        const Entry& e = r.entry(k);
        throw ParseError(source, e.line, e.column,
                         std::string("'") + k + "' conflicts with upconv.pump_mw");
      }
    }
    if (!r.has("detector.mode")) s.detector.mode = GatingMode::nongated;
  } else {
    s.detector.efficiency = r.number("detector.efficiency");
    s.detector.dark_per_window = r.number("detector.dark_per_window");
  }

  try {
    s.link(0.0).validate();
  } catch (const std::exception& err) {
    throw ParseError(source, 0, 0, std::string("invalid scenario: ") + err.what());
  }
  return s;
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, 0, "cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.string());
}

std::string serialize_scenario(const ScenarioFile& s) {
  std::ostringstream out;
  auto put = [&out](std::string_view key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  put("mu", format_double(s.mu));
  put("alpha_db_per_km", format_double(s.alpha_db_per_km));
  put("clock_hz", format_double(s.clock_hz));
  put("baseline_error", format_double(s.baseline_error));
  put("delay_n", std::to_string(s.delay_n));
  put("attack", attack_key(s.attack));
  put("delta", format_double(s.delta));
  if (!s.detector.name.empty()) put("detector.name", s.detector.name);
  put("detector.mode", to_string(s.detector.mode));
  if (!s.pump_mw) {
    put("detector.efficiency", format_double(s.detector.efficiency));
    put("detector.dark_per_window", format_double(s.detector.dark_per_window));
  }
  put("detector.dead_time_s", format_double(s.detector.dead_time_s));
  put("detector.receiver_loss_db", format_double(s.detector.receiver_loss_db));
  if (s.upconv) {
    const auto& c = *s.upconv;
    put("upconv.a1", format_double(c.a1()));
    put("upconv.a2", format_double(c.a2()));
    for (std::size_t i = 0; i < 5; ++i) {
      put("upconv.b" + std::to_string(i), format_double(c.dark_coefficients()[i]));
    }
    put("upconv.bandwidth_hz", format_double(c.bandwidth_hz()));
    if (s.pump_mw) put("upconv.pump_mw", format_double(*s.pump_mw));
  }
  return out.str();
}

}  // namespace dpsrk
