#pragma once

#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "config.hpp"
#include "diagnostics.hpp"
#include "timestepper.hpp"

namespace acsim {

struct Snapshot {
  double t;
  Eigen::VectorXd vertex_values;  // pressure on fluid vertices, |u| inside the obstacle
};

struct RunResult {
  std::shared_ptr<AssembledSystem> sys;
  TimeGrid grid;
  EnergyTrace trace;
  ProbeSeries probes;
  std::vector<Snapshot> snapshots;
  StateVector final_state;
  double wall_seconds = 0.0;
  bool causal_ok = true;
  /// L2(Omega) error of the pressure at t = T against the exact manufactured
  /// field; NaN for non-manufactured runs.
  double mms_error_T = std::numeric_limits<double>::quiet_NaN();
};

/// Builds mesh, map, system, loads and initial data from the config and
/// integrates over (0, T]. Pure in-memory run; no files are touched.
RunResult run_config(const ScenarioConfig& cfg);

/// Energy CSV, probe CSV, snapshot files + manifest, optional matrix dumps.
void write_run_outputs(const RunResult& result, const ScenarioConfig& cfg,
                       const std::string& out_dir);

/// One-line human summary (final energy, drift, wall time).
std::string run_summary(const RunResult& result);

/// Barycentric sampler for point probes on the fluid mesh.
struct ProbeLocator {
  struct Entry {
    int cell;
    double l[3];
  };
  std::vector<Entry> entries;

  static ProbeLocator build(const Mesh& mesh, const std::vector<Eigen::Vector2d>& points);
  double pressure_at(const AssembledSystem& sys, const Eigen::VectorXd& U, int probe) const;
};

}  // namespace acsim
