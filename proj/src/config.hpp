#pragma once

#include <Eigen/Dense>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "assembly.hpp"

namespace acsim {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flat `key = value` file with `#` comments and dotted section prefixes.
class KeyValues {
 public:
  static KeyValues parse_file(const std::string& path);
  static KeyValues parse_text(const std::string& text, const std::string& origin = "<config>");

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::string get_string(const std::string& key, const std::string& fallback);
  std::string require_string(const std::string& key);
  double get_double(const std::string& key, double fallback);
  double require_double(const std::string& key);
  int get_int(const std::string& key, int fallback);
  bool get_bool(const std::string& key, bool fallback);
  Eigen::Vector2d get_vec2(const std::string& key, const Eigen::Vector2d& fallback);

  /// Keys matching prefix.0, prefix.1, ... in order; stops at the first gap.
  std::vector<std::string> indexed(const std::string& prefix) const;

  /// Throws if the file contains keys nothing consumed (typo protection).
  void check_all_consumed() const;

 private:
  std::string origin_;
  std::map<std::string, std::string> values_;
  std::set<std::string> consumed_;
};

struct Bump {
  bool active = false;
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  double radius = 0.0;
  double amplitude = 0.0;
  double t_width = 0.0;  // sources only: duration of the temporal profile
};

/// Everything a run needs: geometry + mesh resolution, materials, time grid,
/// the scenario kind with its data, and the observer setup. Re-validates all
/// ordering/positivity constraints on load.
struct ScenarioConfig {
  enum class Kind { Incident, Manufactured, Raw };

  // geometry
  double r_disk = 0.5, a = 1.0, b = 2.0, R = 6.0;
  int n_radial = 24, n_angular = 96;
  bool grade_outward = false;

  MaterialParams materials{};

  double T = 1.0;
  double dt = 0.0;  // 0 = auto (0.2 h / c)

  Kind kind = Kind::Raw;

  // incident wave
  Eigen::Vector2d direction = Eigen::Vector2d(1.0, 0.0);
  double pulse_width = 0.8;
  double pulse_offset = 0.0;  // 0 = auto (= b)
  double amplitude = 1.0;

  // manufactured
  std::string mms_case = "radial";
  double omega = 3.141592653589793;

  // raw data
  Bump g, h, f;

  // observers and output
  int energy_stride = 1;
  int snapshot_stride = 0;  // 0 = off
  std::vector<Eigen::Vector2d> probes;
  std::string out_dir = "out";
  bool dump_matrices = false;

  static ScenarioConfig load(const std::string& path);
  static ScenarioConfig from_text(const std::string& text, const std::string& origin = "<config>");

  double effective_pulse_offset() const { return pulse_offset > 0.0 ? pulse_offset : b; }

  /// Throws ConfigError naming the violated field.
  void validate() const;
};

}  // namespace acsim
