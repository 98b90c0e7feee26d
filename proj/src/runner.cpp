#include "runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "oracle.hpp"
#include "quadrature.hpp"
#include "scenario.hpp"

namespace acsim {

ProbeLocator ProbeLocator::build(const Mesh& mesh, const std::vector<Eigen::Vector2d>& points) {
  ProbeLocator loc;
  for (size_t p = 0; p < points.size(); ++p) {
    const Eigen::Vector2d& x = points[p];
    bool found = false;
    for (size_t ci = 0; ci < mesh.cells.size() && !found; ++ci) {
      const auto& c = mesh.cells[ci];
      if (c.region != Region::Fluid) continue;
      const Eigen::Vector2d a = mesh.vertices[c.v[0]], b = mesh.vertices[c.v[1]],
                            d = mesh.vertices[c.v[2]];
      const double det = (b - a).x() * (d - a).y() - (b - a).y() * (d - a).x();
      const double l1 = ((x - a).x() * (d - a).y() - (x - a).y() * (d - a).x()) / det;
      const double l2 = ((b - a).x() * (x - a).y() - (b - a).y() * (x - a).x()) / det;
      const double l0 = 1.0 - l1 - l2;
      if (l0 >= -1e-12 && l1 >= -1e-12 && l2 >= -1e-12) {
        loc.entries.push_back({static_cast<int>(ci), {l0, l1, l2}});
        found = true;
      }
    }
    if (!found)
      throw ConfigError("probe " + std::to_string(p) + " at (" + std::to_string(x.x()) + ", " +
                        std::to_string(x.y()) + ") lies in no fluid cell");
  }
  return loc;
}

double ProbeLocator::pressure_at(const AssembledSystem& sys, const Eigen::VectorXd& U,
                                 int probe) const {
  const Entry& e = entries[probe];
  const auto& c = sys.mesh->cells[e.cell];
  double value = 0.0;
  for (int k = 0; k < 3; ++k)
    if (sys.dofs.has_acoustic(c.v[k])) value += e.l[k] * U[sys.dofs.acoustic_dof(c.v[k])];
  return value;
}

namespace {

double mms_l2_error(const AssembledSystem& sys, const Eigen::VectorXd& U,
                    const ManufacturedCase& mms, double t) {
  double err2 = 0.0;
  const Mesh& mesh = *sys.mesh;
  for (const auto& c : mesh.cells) {
    if (c.region != Region::Fluid) continue;
    const Eigen::Vector2d x0 = mesh.vertices[c.v[0]], x1 = mesh.vertices[c.v[1]],
                          x2 = mesh.vertices[c.v[2]];
    const double area =
        0.5 * ((x1 - x0).x() * (x2 - x0).y() - (x1 - x0).y() * (x2 - x0).x());
    double nodal[3];
    for (int k = 0; k < 3; ++k)
      nodal[k] = sys.dofs.has_acoustic(c.v[k]) ? U[sys.dofs.acoustic_dof(c.v[k])] : 0.0;
    for (const TriQuadPoint& q : tri_rule_deg5()) {
      const Eigen::Vector2d x = q.l0 * x0 + q.l1 * x1 + q.l2 * x2;
      const double ph = q.l0 * nodal[0] + q.l1 * nodal[1] + q.l2 * nodal[2];
      const double diff = ph - mms.p(x.x(), x.y(), t);
      err2 += q.w * area * diff * diff;
    }
  }
  return std::sqrt(err2);
}

}  // namespace

RunResult run_config(const ScenarioConfig& cfg) {
  const auto t_start = std::chrono::steady_clock::now();
  cfg.validate();

  auto mesh = std::make_shared<const Mesh>(generate_disk_annulus(
      cfg.r_disk, cfg.a, cfg.b, cfg.n_radial, cfg.n_angular, cfg.grade_outward));
  const RadialMap map = RadialMap::make(cfg.a, cfg.b, cfg.R, 2);

  RunResult result;
  result.sys = std::make_shared<AssembledSystem>(assemble_system(mesh, map, cfg.materials));
  const AssembledSystem& sys = *result.sys;
  const int n = sys.dofs.size();

  Eigen::VectorXd U0 = Eigen::VectorXd::Zero(n), V0 = Eigen::VectorXd::Zero(n);
  LoadProvider loads = LoadProvider::none(n);
  ManufacturedCase mms;

  switch (cfg.kind) {
    case ScenarioConfig::Kind::Incident: {
      const IncidentWave wave = IncidentWave::from_config(cfg);
      loads = incident_loads(sys, wave);
      result.causal_ok =
          causal_truncation_ok(cfg.R, cfg.a, cfg.materials.c, cfg.T, cfg.pulse_width);
      break;
    }
    case ScenarioConfig::Kind::Raw: {
      U0 = interpolate_acoustic(sys, bump_field(cfg.g));
      V0 = interpolate_acoustic(sys, bump_field(cfg.h));
      if (auto f = bump_source(cfg.f)) {
        loads.load = [&sys, f](double t) { return assemble_load(*sys.mesh, sys.dofs, f, t); };
        loads.elastic_rate = nullptr;
      }
      result.causal_ok = causal_truncation_ok(cfg.R, cfg.a, cfg.materials.c, cfg.T);
      break;
    }
    case ScenarioConfig::Kind::Manufactured: {
      mms = make_manufactured(map, cfg.materials, cfg.mms_case, cfg.r_disk, cfg.omega);
      U0 = interpolate_acoustic(sys, mms.g);
      V0 = interpolate_acoustic(sys, mms.h);
      loads.load = [&sys, &mms](double t) {
        return assemble_load(*sys.mesh, sys.dofs, mms.f, t);
      };
      break;
    }
  }

  const double dt = cfg.dt > 0.0 ? cfg.dt : default_dt(*mesh, cfg.materials);
  result.grid = TimeGrid::cover(cfg.T, dt);

  const ProbeLocator locator = ProbeLocator::build(*mesh, cfg.probes);
  result.probes.values.resize(cfg.probes.size());

  std::vector<Observer> observers;
  observers.push_back(
      {cfg.energy_stride, [&](int, const StateVector& s, const Eigen::VectorXd& F) {
         result.trace.append(sys, s, F, loads);
       }});
  if (!cfg.probes.empty())
    observers.push_back({1, [&](int, const StateVector& s, const Eigen::VectorXd&) {
                           result.probes.times.push_back(s.t);
                           for (size_t p = 0; p < locator.entries.size(); ++p)
                             result.probes.values[p].push_back(
                                 locator.pressure_at(sys, s.U, static_cast<int>(p)));
                         }});
  if (cfg.snapshot_stride > 0)
    observers.push_back(
        {cfg.snapshot_stride, [&](int, const StateVector& s, const Eigen::VectorXd&) {
           Eigen::VectorXd values(mesh->vertices.size());
           for (size_t v = 0; v < mesh->vertices.size(); ++v) {
             const int vi = static_cast<int>(v);
             if (sys.dofs.has_acoustic(vi))
               values[v] = s.U[sys.dofs.acoustic_dof(vi)];
             else if (sys.dofs.has_elastic(vi))
               values[v] = std::hypot(s.U[sys.dofs.elastic_dof(vi, 0)],
                                      s.U[sys.dofs.elastic_dof(vi, 1)]);
             else
               values[v] = 0.0;
           }
           result.snapshots.push_back({s.t, std::move(values)});
         }});

  result.final_state = run(sys, result.grid, std::move(U0), std::move(V0), loads, observers);

  if (cfg.kind == ScenarioConfig::Kind::Manufactured)
    result.mms_error_T = mms_l2_error(sys, result.final_state.U, mms, result.final_state.t);

  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return result;
}

void write_run_outputs(const RunResult& result, const ScenarioConfig& cfg,
                       const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + out_dir + ": " + ec.message());

  write_energy_csv(result.trace, out_dir + "/energy.csv");
  if (!result.probes.values.empty()) write_probe_csv(result.probes, out_dir + "/probes.csv");

  if (!result.snapshots.empty()) {
    std::ofstream manifest(out_dir + "/snapshots.txt");
    char name[48], buf[96];
    for (size_t i = 0; i < result.snapshots.size(); ++i) {
      std::snprintf(name, sizeof name, "snapshot_%06zu.txt", i);
      std::snprintf(buf, sizeof buf, "%s %.17g\n", name, result.snapshots[i].t);
      manifest << buf;
      std::ofstream snap(out_dir + "/" + name);
      const Mesh& mesh = *result.sys->mesh;
      for (size_t v = 0; v < mesh.vertices.size(); ++v) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", mesh.vertices[v].x(),
                      mesh.vertices[v].y(), result.snapshots[i].vertex_values[v]);
        snap << buf;
      }
    }
  }

  if (cfg.dump_matrices) {
    dump_coo(result.sys->A, out_dir + "/A.coo");
    dump_coo(result.sys->B, out_dir + "/B.coo");
  }
}

std::string run_summary(const RunResult& result) {
  const double drift = check_energy_identity(result.trace);
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "dofs=%d steps=%d dt=%.6g final_E=%.12g drift=%.3e wall=%.2fs%s",
                result.sys->dofs.size(), result.grid.n_steps, result.grid.dt,
                result.trace.E.empty() ? 0.0 : result.trace.E.back(), drift,
                result.wall_seconds,
                result.causal_ok ? "" : "  [warning: R < a + cT, truncation not causal]");
  return buf;
}

}  // namespace acsim
