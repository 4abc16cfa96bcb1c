#include "vlrot/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include "vlrot/errors.hpp"

namespace vlrot {

int RunConfig::n_steps() const {
  if (t_final == 0.0) return 0;
  const double h = scheme.h;
  const double steps = t_final / h;
  const long long k = std::llround(steps);
  if (k < 1 || std::abs(steps - static_cast<double>(k)) > 1e-9 * std::max(1.0, steps))
    throw config_error("t_final must be an integer multiple of h (t_final = " +
                       std::to_string(t_final) + ", h = " + std::to_string(h) + ")");
  return static_cast<int>(k);
}

Vec3 RunConfig::smallest_modes() const {
  Vec3 k0{};
  for (int a = 0; a < 3; ++a) {
    const AxisSpec& ax = grid.axes[a];
    if (!ax.degenerate()) k0[a] = 2.0 * std::numbers::pi / ax.length;
  }
  return k0;
}

namespace {

struct Entry {
  std::string value;
  int line;
};

struct KeyTable {
  std::map<std::string, Entry> entries;
  std::string origin;

  std::optional<Entry> take(const std::string& key) {
    auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    Entry e = it->second;
    entries.erase(it);
    return e;
  }
};

[[noreturn]] void fail(const KeyTable& t, int line, const std::string& msg) {
  std::ostringstream os;
  os << t.origin << ":" << line << ": " << msg;
  throw config_error(os.str());
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

KeyTable tokenize(const std::string& text, const std::string& origin) {
  KeyTable table;
  table.origin = origin;
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(table, lineno, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) fail(table, lineno, "empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(table, lineno, "expected `key = value`, got '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(table, lineno, "empty key");
    if (value.empty()) fail(table, lineno, "key '" + key + "' has no value");
    if (section.empty()) fail(table, lineno, "key '" + key + "' outside any [section]");
    const std::string full = section + "." + key;
    if (auto it = table.entries.find(full); it != table.entries.end()) {
      std::ostringstream os;
      os << "duplicate key '" << full << "' (first set on line " << it->second.line
         << ", again on line " << lineno << ")";
      fail(table, lineno, os.str());
    }
    table.entries.emplace(full, Entry{value, lineno});
  }
  return table;
}

double parse_real(const KeyTable& t, const std::string& key, const Entry& e) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(e.value, &pos);
    if (pos != e.value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    fail(t, e.line, "key '" + key + "': expected a real number, got '" + e.value + "'");
  }
}

int parse_int(const KeyTable& t, const std::string& key, const Entry& e) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(e.value, &pos);
    if (pos != e.value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    fail(t, e.line, "key '" + key + "': expected an integer, got '" + e.value + "'");
  }
}

bool parse_bool(const KeyTable& t, const std::string& key, const Entry& e) {
  if (e.value == "true" || e.value == "1") return true;
  if (e.value == "false" || e.value == "0") return false;
  fail(t, e.line, "key '" + key + "': expected true or false, got '" + e.value + "'");
}

template <typename T>
void set_if(KeyTable& t, const std::string& key, T& out) {
  if (auto e = t.take(key)) {
    if constexpr (std::is_same_v<T, double>)
      out = parse_real(t, key, *e);
    else if constexpr (std::is_same_v<T, int>)
      out = parse_int(t, key, *e);
    else if constexpr (std::is_same_v<T, bool>)
      out = parse_bool(t, key, *e);
    else
      out = e->value;
  }
}

/// Per-case default spatial box, where the experiment defines one.
std::optional<double> default_spatial_length(CaseKind kind, int axis) {
  switch (kind) {
    case CaseKind::const_fields:
    case CaseKind::nibw_stable:
      return 4.0 * std::numbers::pi;
    case CaseKind::nibw_unstable:
      return axis == 0 ? std::numbers::pi
                       : (axis == 1 ? 4.0 * std::numbers::pi : 80.0 * std::numbers::pi);
    case CaseKind::rotation_only:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
  KeyTable t = tokenize(text, origin);
  RunConfig cfg;

  // [case] comes first: grid defaults depend on it.
  if (auto e = t.take("case.type")) {
    const std::string& v = e->value;
    if (v == "rotation_only")
      cfg.case_params.kind = CaseKind::rotation_only;
    else if (v == "const_fields")
      cfg.case_params.kind = CaseKind::const_fields;
    else if (v == "nibw_stable")
      cfg.case_params.kind = CaseKind::nibw_stable;
    else if (v == "nibw_unstable")
      cfg.case_params.kind = CaseKind::nibw_unstable;
    else
      fail(t, e->line,
           "case.type = '" + v +
               "' invalid; expected one of rotation_only, const_fields, nibw_stable, "
               "nibw_unstable");
  }
  if (cfg.case_params.kind == CaseKind::const_fields) cfg.case_params.E0 = {0.1, 0.0, 0.0};
  if (cfg.case_params.kind == CaseKind::nibw_unstable) {
    cfg.case_params.kappa_n = 0.44;
    cfg.case_params.kappa_T = 0.36;
  }
  set_if(t, "case.omega_c", cfg.scheme.omega_c);
  set_if(t, "case.epsilon", cfg.case_params.epsilon);
  set_if(t, "case.e0x", cfg.case_params.E0.x);
  set_if(t, "case.e0y", cfg.case_params.E0.y);
  set_if(t, "case.e0z", cfg.case_params.E0.z);
  set_if(t, "case.alpha", cfg.case_params.alpha);
  set_if(t, "case.m_max", cfg.case_params.m_max);
  set_if(t, "case.p_max", cfg.case_params.p_max);
  set_if(t, "case.kappa_n", cfg.case_params.kappa_n);
  set_if(t, "case.kappa_t", cfg.case_params.kappa_T);

  // [grid]
  static const char* kAxis[6] = {"x", "y", "z", "vx", "vy", "vz"};
  std::array<int, 6> n{1, 1, 1, 1, 1, 1};
  std::array<std::optional<double>, 6> min_set, len_set;
  for (int a = 0; a < 6; ++a) {
    set_if(t, std::string("grid.n") + kAxis[a], n[a]);
    if (auto e = t.take(std::string("grid.") + kAxis[a] + "0"))
      min_set[a] = parse_real(t, std::string("grid.") + kAxis[a] + "0", *e);
    if (auto e = t.take(std::string("grid.l") + kAxis[a]))
      len_set[a] = parse_real(t, std::string("grid.l") + kAxis[a], *e);
  }
  std::array<double, 6> mins{}, lens{};
  for (int a = 0; a < 6; ++a) {
    if (n[a] < 1) throw config_error(std::string("grid.n") + kAxis[a] + " must be >= 1");
    const bool velocity = a >= 3;
    if (n[a] == 1) {
      mins[a] = min_set[a].value_or(0.0);
      lens[a] = len_set[a].value_or(1.0);
    } else if (velocity) {
      mins[a] = min_set[a].value_or(-6.0);
      lens[a] = len_set[a].value_or(12.0);
    } else {
      mins[a] = min_set[a].value_or(0.0);
      const auto dflt = default_spatial_length(cfg.case_params.kind, a);
      if (len_set[a])
        lens[a] = *len_set[a];
      else if (dflt)
        lens[a] = *dflt;
      else
        throw config_error(std::string("grid.l") + kAxis[a] +
                           " required: this case has no default spatial box");
    }
  }
  cfg.grid = make_grid(n, mins, lens);

  // [scheme]
  if (auto e = t.take("scheme.frame")) {
    if (e->value == "physical")
      cfg.scheme.frame = Frame::physical;
    else if (e->value == "rotating")
      cfg.scheme.frame = Frame::rotating;
    else
      fail(t, e->line,
           "scheme.frame = '" + e->value + "' invalid; expected one of physical, rotating");
  }
  if (auto e = t.take("scheme.order")) {
    if (e->value == "strang")
      cfg.scheme.order = SchemeOrder::strang;
    else if (e->value == "fourth")
      cfg.scheme.order = SchemeOrder::fourth;
    else
      fail(t, e->line,
           "scheme.order = '" + e->value + "' invalid; expected one of strang, fourth");
  }
  if (auto e = t.take("scheme.interp")) {
    if (e->value == "trig")
      cfg.scheme.interp.kind = InterpKind::trig;
    else if (e->value == "lagrange")
      cfg.scheme.interp.kind = InterpKind::lagrange;
    else
      fail(t, e->line,
           "scheme.interp = '" + e->value + "' invalid; expected one of trig, lagrange");
  }
  set_if(t, "scheme.q", cfg.scheme.interp.q);
  set_if(t, "scheme.merge", cfg.scheme.merge);

  // [time]
  set_if(t, "time.h", cfg.scheme.h);
  set_if(t, "time.t_final", cfg.t_final);

  // [output]
  set_if(t, "output.directory", cfg.output.directory);
  set_if(t, "output.cadence_steps", cfg.output.cadence_steps);
  set_if(t, "output.emit_snapshots", cfg.output.emit_snapshots);
  set_if(t, "output.emit_density", cfg.output.emit_density);

  if (!t.entries.empty()) {
    const auto& [key, entry] = *t.entries.begin();
    fail(t, entry.line, "unknown key '" + key + "'");
  }

  // Validation.
  if (!(cfg.scheme.h > 0.0)) throw config_error("time.h must be > 0");
  if (cfg.t_final < 0.0) throw config_error("time.t_final must be >= 0");
  cfg.n_steps();  // commensurability check
  if (cfg.output.cadence_steps < 1) throw config_error("output.cadence_steps must be >= 1");
  if (cfg.scheme.interp.kind == InterpKind::lagrange && cfg.scheme.interp.q < 2)
    throw config_error("scheme.q must be >= 2");
  if (cfg.case_params.epsilon < 0.0) throw config_error("case.epsilon must be >= 0");
  if (cfg.case_params.m_max < 1) throw config_error("case.m_max must be >= 1");
  if (cfg.case_params.p_max < 0) throw config_error("case.p_max must be >= 0");
  return cfg;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw config_error("cannot open config file " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config_text(ss.str(), path.string());
}

}  // namespace vlrot
