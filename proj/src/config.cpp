#include "config.hpp"

#include <fstream>
#include <sstream>

namespace acsim {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

KeyValues KeyValues::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

KeyValues KeyValues::parse_text(const std::string& text, const std::string& origin) {
  KeyValues kv;
  kv.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value', got '" +
                        line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    if (!kv.values_.emplace(key, value).second)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }
  return kv;
}

std::string KeyValues::get_string(const std::string& key, const std::string& fallback) {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  consumed_.insert(key);
  return it->second;
}

std::string KeyValues::require_string(const std::string& key) {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError(origin_ + ": missing required key '" + key + "'");
  consumed_.insert(key);
  return it->second;
}

double KeyValues::require_double(const std::string& key) {
  const std::string raw = require_string(key);
  try {
    size_t pos = 0;
    const double v = std::stod(raw, &pos);
    if (trim(raw.substr(pos)).empty()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(origin_ + ": key '" + key + "': expected a number, got '" + raw + "'");
}

double KeyValues::get_double(const std::string& key, double fallback) {
  if (!has(key)) return fallback;
  return require_double(key);
}

int KeyValues::get_int(const std::string& key, int fallback) {
  if (!has(key)) return fallback;
  const double v = require_double(key);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    throw ConfigError(origin_ + ": key '" + key + "': expected an integer");
  return i;
}

bool KeyValues::get_bool(const std::string& key, bool fallback) {
  if (!has(key)) return fallback;
  const std::string raw = require_string(key);
  if (raw == "true" || raw == "1" || raw == "yes") return true;
  if (raw == "false" || raw == "0" || raw == "no") return false;
  throw ConfigError(origin_ + ": key '" + key + "': expected true/false, got '" + raw + "'");
}

Eigen::Vector2d KeyValues::get_vec2(const std::string& key, const Eigen::Vector2d& fallback) {
  if (!has(key)) return fallback;
  const std::string raw = require_string(key);
  std::istringstream iss(raw);
  double x, y;
  std::string rest;
  if (!(iss >> x >> y) || (iss >> rest))
    throw ConfigError(origin_ + ": key '" + key + "': expected two numbers, got '" + raw + "'");
  return {x, y};
}

std::vector<std::string> KeyValues::indexed(const std::string& prefix) const {
  std::vector<std::string> out;
  for (int i = 0;; ++i) {
    const std::string key = prefix + "." + std::to_string(i);
    if (!values_.count(key)) break;
    out.push_back(key);
  }
  return out;
}

void KeyValues::check_all_consumed() const {
  for (const auto& [key, value] : values_)
    if (!consumed_.count(key))
      throw ConfigError(origin_ + ": unknown key '" + key + "'");
}

namespace {

Bump read_bump(KeyValues& kv, const std::string& field, bool is_source) {
  Bump bump;
  const std::string kind = kv.get_string("scenario." + field, "zero");
  if (kind == "zero") return bump;
  if (kind != "bump")
    throw ConfigError("scenario." + field + ": expected 'zero' or 'bump', got '" + kind + "'");
  bump.active = true;
  bump.center = kv.get_vec2("scenario." + field + ".center", Eigen::Vector2d::Zero());
  bump.radius = kv.get_double("scenario." + field + ".radius", 0.25);
  bump.amplitude = kv.get_double("scenario." + field + ".amplitude", 1.0);
  if (is_source) bump.t_width = kv.get_double("scenario." + field + ".t_width", 0.5);
  return bump;
}

}  // namespace

namespace {

ScenarioConfig config_from_kv(KeyValues& kv);

}  // namespace

ScenarioConfig ScenarioConfig::load(const std::string& path) {
  KeyValues kv = KeyValues::parse_file(path);
  return config_from_kv(kv);
}

ScenarioConfig ScenarioConfig::from_text(const std::string& text, const std::string& origin) {
  KeyValues kv = KeyValues::parse_text(text, origin);
  return config_from_kv(kv);
}

namespace {

ScenarioConfig config_from_kv(KeyValues& kv) {
  ScenarioConfig cfg;

  cfg.r_disk = kv.get_double("geometry.r_disk", cfg.r_disk);
  cfg.a = kv.get_double("geometry.a", cfg.a);
  cfg.b = kv.get_double("geometry.b", cfg.b);
  cfg.R = kv.get_double("geometry.R", cfg.R);
  cfg.n_radial = kv.get_int("geometry.n_radial", cfg.n_radial);
  cfg.n_angular = kv.get_int("geometry.n_angular", cfg.n_angular);
  cfg.grade_outward = kv.get_bool("geometry.grade_outward", cfg.grade_outward);

  const double c = kv.get_double("material.c", 1.0);
  const double rho1 = kv.get_double("material.rho1", 1.0);
  const double rho2 = kv.get_double("material.rho2", 1.0);
  const double mu = kv.get_double("material.mu", 1.0);
  const double lambda = kv.get_double("material.lambda", 1.0);
  try {
    cfg.materials = MaterialParams::make(c, rho1, rho2, mu, lambda);
  } catch (const std::domain_error& err) {
    throw ConfigError(std::string("material: ") + err.what());
  }

  cfg.T = kv.get_double("time.T", cfg.T);
  if (const std::string dt = kv.get_string("time.dt", "auto"); dt != "auto") {
    try {
      cfg.dt = std::stod(dt);
    } catch (const std::exception&) {
      throw ConfigError("time.dt: expected a number or 'auto', got '" + dt + "'");
    }
  }

  const std::string kind = kv.get_string("scenario.kind", "raw");
  if (kind == "incident")
    cfg.kind = ScenarioConfig::Kind::Incident;
  else if (kind == "manufactured")
    cfg.kind = ScenarioConfig::Kind::Manufactured;
  else if (kind == "raw")
    cfg.kind = ScenarioConfig::Kind::Raw;
  else
    throw ConfigError("scenario.kind: expected incident|manufactured|raw, got '" + kind + "'");

  cfg.direction = kv.get_vec2("scenario.direction", cfg.direction);
  cfg.pulse_width = kv.get_double("scenario.pulse_width", cfg.pulse_width);
  if (const std::string off = kv.get_string("scenario.pulse_offset", "auto"); off != "auto") {
    try {
      cfg.pulse_offset = std::stod(off);
    } catch (const std::exception&) {
      throw ConfigError("scenario.pulse_offset: expected a number or 'auto'");
    }
  }
  cfg.amplitude = kv.get_double("scenario.amplitude", cfg.amplitude);
  cfg.mms_case = kv.get_string("scenario.case", cfg.mms_case);
  cfg.omega = kv.get_double("scenario.omega", cfg.omega);
  cfg.g = read_bump(kv, "g", false);
  cfg.h = read_bump(kv, "h", false);
  cfg.f = read_bump(kv, "f", true);

  cfg.energy_stride = kv.get_int("observer.energy_stride", cfg.energy_stride);
  cfg.snapshot_stride = kv.get_int("observer.snapshot_stride", cfg.snapshot_stride);
  for (const std::string& key : kv.indexed("observer.probe"))
    cfg.probes.push_back(kv.get_vec2(key, Eigen::Vector2d::Zero()));

  cfg.out_dir = kv.get_string("output.dir", cfg.out_dir);
  cfg.dump_matrices = kv.get_bool("debug.dump_matrices", cfg.dump_matrices);

  kv.check_all_consumed();
  cfg.validate();
  return cfg;
}

}  // namespace

void ScenarioConfig::validate() const {
  if (!(r_disk > 0.0)) throw ConfigError("geometry.r_disk: must be > 0");
  if (!(a > r_disk)) throw ConfigError("geometry.a: must exceed geometry.r_disk");
  if (!(b > a)) throw ConfigError("geometry.b: must exceed geometry.a");
  if (!(R >= b)) throw ConfigError("geometry.R: must be >= geometry.b");
  if (n_radial < 2) throw ConfigError("geometry.n_radial: must be >= 2");
  if (n_angular < 8) throw ConfigError("geometry.n_angular: must be >= 8");
  if (!(T > 0.0)) throw ConfigError("time.T: must be > 0");
  if (dt < 0.0) throw ConfigError("time.dt: must be > 0 or auto");
  if (energy_stride < 1) throw ConfigError("observer.energy_stride: must be >= 1");
  if (snapshot_stride < 0) throw ConfigError("observer.snapshot_stride: must be >= 0");

  if (kind == Kind::Incident) {
    if (!(direction.norm() > 0.0)) throw ConfigError("scenario.direction: must be nonzero");
    if (!(pulse_width > 0.0)) throw ConfigError("scenario.pulse_width: must be > 0");
    if (effective_pulse_offset() < r_disk)
      throw ConfigError("scenario.pulse_offset: pulse support violates quiescence (offset < r_disk)");
  }
  if (kind == Kind::Manufactured && !(omega > 0.0))
    throw ConfigError("scenario.omega: must be > 0");
  for (const Bump* bump : {&g, &h}) {
    if (!bump->active) continue;
    if (!(bump->radius > 0.0)) throw ConfigError("scenario bump radius: must be > 0");
    if (bump->center.norm() + bump->radius > b)
      throw ConfigError("scenario bump: support must stay inside the outer circle (|center|+radius <= b)");
  }
  if (f.active) {
    if (!(f.radius > 0.0)) throw ConfigError("scenario.f.radius: must be > 0");
    if (!(f.t_width > 0.0)) throw ConfigError("scenario.f.t_width: must be > 0");
  }
  for (size_t i = 0; i < probes.size(); ++i) {
    const double r = probes[i].norm();
    if (r <= r_disk || r >= b)
      throw ConfigError("observer.probe." + std::to_string(i) +
                        ": must lie in the fluid annulus r_disk < |x| < b");
  }
}

}  // namespace acsim
