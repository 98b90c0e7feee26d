#pragma once

#include <string>
#include <vector>

namespace acsim {

/// One acceptance check: `pass` is `measured relation threshold`.
struct CheckLine {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  std::string relation = "<=";
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckLine> lines;
  double wall_seconds = 0.0;

  bool all_pass() const;
};

std::string format_check_line(const CheckLine& line);

/// Suites: map, lemmas, energy, causality, equivalence, apriori, mms.
const std::vector<std::string>& verify_suite_names();

/// Runs one named suite at its canonical desk-scale configuration. Throws
/// ConfigError on an unknown suite name. Prints each check line to stdout
/// unless quiet.
SuiteReport run_verify_suite(const std::string& name, unsigned long long seed, bool quiet);

/// Manufactured-solution refinement ladder (h and dt halved together).
struct ConvergenceRow {
  int level = 0;
  int n_radial = 0;
  int n_angular = 0;
  double h = 0.0;
  double dt = 0.0;
  double error = 0.0;
  double order = 0.0;  // vs previous level; 0 for the first
};
std::vector<ConvergenceRow> mms_convergence(const std::string& case_id, int levels, bool quiet);

}  // namespace acsim
