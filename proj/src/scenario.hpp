#pragma once

#include <Eigen/Dense>
#include <functional>

#include "assembly.hpp"
#include "config.hpp"
#include "timestepper.hpp"

namespace acsim {

/// Compactly supported C^3 profile: amplitude * u^4 (1-u)^4 with u = s/width,
/// zero outside (0, width).
struct Pulse {
  double width = 1.0;
  double amplitude = 1.0;

  double value(double s) const;
  double derivative(double s) const;
};

/// Plane pressure pulse p_inc(x, t) = pulse(c t - theta.x - offset). The
/// offset delays the front so the obstacle sees nothing at t = 0.
struct IncidentWave {
  Eigen::Vector2d theta = Eigen::Vector2d(1.0, 0.0);  // unit propagation direction
  Pulse pulse;
  double offset = 0.0;
  double c = 1.0;

  static IncidentWave from_config(const ScenarioConfig& cfg);

  double pressure(const Eigen::Vector2d& x, double t) const;
  double pressure_rate(const Eigen::Vector2d& x, double t) const;  // d/dt
  /// n . grad p_inc = -(theta . n) * pulse'(c t - theta.x - offset).
  double normal_derivative(const Eigen::Vector2d& x, const Eigen::Vector2d& n, double t) const;

  /// Time the incident front first touches the disk obstacle of radius r_disk.
  double first_contact_time(double r_disk) const { return (offset - r_disk) / c; }

  /// Causal lower bound for the scattered field reaching `x`: minimum over the
  /// obstacle boundary of (incident arrival there) + (travel time to x).
  double scattered_arrival_time(const Eigen::Vector2d& x, double r_disk) const;
};

/// Interface loads of the scattered-field formulation: the incident trace
/// forces both equations through the coupling conditions on the obstacle
/// boundary (pressure on the elastic side, normal derivative on the acoustic
/// side); g = h = 0, f = 0, and the outer boundary stays homogeneous.
LoadProvider incident_loads(const AssembledSystem& sys, const IncidentWave& wave);

/// C^3 space bump (1 - |x-c|^2/w^2)^4, zero outside the disk of radius w.
std::function<double(double, double)> bump_field(const Bump& bump);

/// Space bump times a C^3 time profile supported on (0, t_width).
std::function<double(double, double, double)> bump_source(const Bump& bump);

/// Nodal interpolation of a scalar field into the acoustic block of a
/// full-length dof vector (elastic block zero).
Eigen::VectorXd interpolate_acoustic(const AssembledSystem& sys,
                                     const std::function<double(double, double)>& field);

}  // namespace acsim
