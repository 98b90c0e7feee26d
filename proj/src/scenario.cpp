#include "scenario.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "quadrature.hpp"

namespace acsim {

double Pulse::value(double s) const {
  const double u = s / width;
  if (u <= 0.0 || u >= 1.0) return 0.0;
  const double a = u * (1.0 - u);
  return amplitude * a * a * a * a;
}

double Pulse::derivative(double s) const {
  const double u = s / width;
  if (u <= 0.0 || u >= 1.0) return 0.0;
  const double a = u * (1.0 - u);
  return amplitude * 4.0 * a * a * a * (1.0 - 2.0 * u) / width;
}

IncidentWave IncidentWave::from_config(const ScenarioConfig& cfg) {
  IncidentWave wave;
  const double norm = cfg.direction.norm();
  if (!(norm > 0.0)) throw ConfigError("incident wave: direction must be a nonzero vector");
  wave.theta = cfg.direction / norm;
  wave.pulse = Pulse{cfg.pulse_width, cfg.amplitude};
  wave.offset = cfg.effective_pulse_offset();
  wave.c = cfg.materials.c;
  if (wave.offset < cfg.r_disk)
    throw ConfigError("incident wave: pulse support violates quiescence (offset < r_disk)");
  return wave;
}

double IncidentWave::pressure(const Eigen::Vector2d& x, double t) const {
  return pulse.value(c * t - theta.dot(x) - offset);
}

double IncidentWave::pressure_rate(const Eigen::Vector2d& x, double t) const {
  return c * pulse.derivative(c * t - theta.dot(x) - offset);
}

double IncidentWave::normal_derivative(const Eigen::Vector2d& x, const Eigen::Vector2d& n,
                                       double t) const {
  return -theta.dot(n) * pulse.derivative(c * t - theta.dot(x) - offset);
}

double IncidentWave::scattered_arrival_time(const Eigen::Vector2d& x, double r_disk) const {
  constexpr int kSamples = 4096;
  double best = std::numeric_limits<double>::max();
  for (int i = 0; i < kSamples; ++i) {
    const double ang = 2.0 * std::numbers::pi * i / kSamples;
    const Eigen::Vector2d y(r_disk * std::cos(ang), r_disk * std::sin(ang));
    best = std::min(best, (offset + theta.dot(y) + (x - y).norm()) / c);
  }
  return best;
}

LoadProvider incident_loads(const AssembledSystem& sys, const IncidentWave& wave) {
  // Both integrands are smooth traces of the pulse, so a 4-point edge rule is
  // used rather than the exact-P1 weights.
  const auto assemble = [&sys, wave](double t, bool rate_only) {
    Eigen::VectorXd F = Eigen::VectorXd::Zero(sys.dofs.size());
    const Mesh& mesh = *sys.mesh;
    const double rho1 = sys.params.rho1;
    for (const auto& e : mesh.boundary) {
      if (e.tag != BoundaryTag::Interface) continue;
      const Eigen::Vector2d x0 = mesh.vertices[e.v0], x1 = mesh.vertices[e.v1];
      const double len = (x1 - x0).norm();
      const int verts[2] = {e.v0, e.v1};
      for (const GaussPoint& q : gauss_rule(4)) {
        const Eigen::Vector2d x = (1.0 - q.x) * x0 + q.x * x1;
        const double phi[2] = {1.0 - q.x, q.x};
        const double w = q.w * len;
        if (rate_only) {
          const double dpinc = wave.pressure_rate(x, t);
          for (int i = 0; i < 2; ++i)
            for (int comp = 0; comp < 2; ++comp)
              F[sys.dofs.elastic_dof(verts[i], comp)] -= rho1 * w * dpinc * phi[i] * e.normal[comp];
        } else {
          const double pinc = wave.pressure(x, t);
          const double dn = wave.normal_derivative(x, e.normal, t);
          for (int i = 0; i < 2; ++i) {
            for (int comp = 0; comp < 2; ++comp)
              F[sys.dofs.elastic_dof(verts[i], comp)] -= rho1 * w * pinc * phi[i] * e.normal[comp];
            if (sys.dofs.has_acoustic(verts[i]))
              F[sys.dofs.acoustic_dof(verts[i])] += w * dn * phi[i];
          }
        }
      }
    }
    return F;
  };
  LoadProvider loads;
  loads.load = [assemble](double t) { return assemble(t, false); };
  loads.elastic_rate = [assemble](double t) { return assemble(t, true); };
  return loads;
}

std::function<double(double, double)> bump_field(const Bump& bump) {
  if (!bump.active) return [](double, double) { return 0.0; };
  const Eigen::Vector2d c = bump.center;
  const double w2 = bump.radius * bump.radius, amp = bump.amplitude;
  return [c, w2, amp](double x, double y) {
    const double s = 1.0 - ((Eigen::Vector2d(x, y) - c).squaredNorm()) / w2;
    if (s <= 0.0) return 0.0;
    return amp * s * s * s * s;
  };
}

std::function<double(double, double, double)> bump_source(const Bump& bump) {
  if (!bump.active) return nullptr;
  const auto space = bump_field(bump);
  const Pulse profile{bump.t_width, 1.0};
  return [space, profile](double x, double y, double t) {
    return space(x, y) * profile.value(t);
  };
}

Eigen::VectorXd interpolate_acoustic(const AssembledSystem& sys,
                                     const std::function<double(double, double)>& field) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(sys.dofs.size());
  const Mesh& mesh = *sys.mesh;
  for (size_t v = 0; v < mesh.vertices.size(); ++v)
    if (sys.dofs.has_acoustic(static_cast<int>(v)))
      out[sys.dofs.acoustic_dof(static_cast<int>(v))] =
          field(mesh.vertices[v].x(), mesh.vertices[v].y());
  return out;
}

}  // namespace acsim
