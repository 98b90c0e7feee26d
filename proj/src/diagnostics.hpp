#pragma once

#include <span>
#include <string>
#include <vector>

#include "assembly.hpp"
#include "scenario.hpp"
#include "timestepper.hpp"

namespace acsim {

struct DiagnosticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// E1 is the acoustic energy ||sqrt(beta)/c p_t||^2 + ||M^{1/2} grad p||^2.
/// E2 pairs the elastic acceleration with the velocity gradients,
///   rho1 rho2 ||u_tt||^2 + rho1 (lambda+mu) ||div u_t||^2 + rho1 mu ||grad u_t||^2,
/// the form whose interface terms cancel against E1 discretely (L = -E^T).
/// E2_alt is the undifferentiated first-order form rho1 rho2 ||u_t||^2 + a1[u, u];
/// no conservation law is claimed for it, it is recorded for reference only.
struct EnergyParts {
  double E1 = 0.0, E2 = 0.0, E2_alt = 0.0, E = 0.0;
};
EnergyParts compute_energy(const AssembledSystem& sys, const StateVector& state);

/// The five field norms of the a priori bound's left side.
struct FieldNorms {
  double p = 0.0, gradp = 0.0, ut = 0.0, divu = 0.0, gradu = 0.0;
};
FieldNorms compute_field_norms(const AssembledSystem& sys, const StateVector& state);

/// Sampled energy/norm history. `power` is the instantaneous source power
/// 2 (p_t, f) + 2 (u_tt, dF_el/dt), the integrand of the work term in the
/// energy identity.
struct EnergyTrace {
  std::vector<double> times;
  std::vector<double> E1, E2, E2_alt, E;
  std::vector<double> norm_p, norm_gradp, norm_ut, norm_divu, norm_gradu;
  std::vector<double> power;

  size_t size() const { return times.size(); }
  void append(const AssembledSystem& sys, const StateVector& state, const Eigen::VectorXd& load,
              const LoadProvider& loads);
};

/// CSV with header t,E1,E2,E,norm_p,norm_gradp,norm_ut,norm_divu,norm_gradu
/// at full double precision.
void write_energy_csv(const EnergyTrace& trace, const std::string& path);

/// Probe time series; values[p][i] is probe p at times[i].
struct ProbeSeries {
  std::vector<double> times;
  std::vector<std::vector<double>> values;
};
void write_probe_csv(const ProbeSeries& probes, const std::string& path);

/// Max over samples of |E(t) - E(0) - integral of the source power| relative
/// to max(E(0), max E); the work integral uses the trapezoid rule on the
/// sample grid. Zero data reports 0.
double check_energy_identity(const EnergyTrace& trace, std::span<const double> source_power);

inline double check_energy_identity(const EnergyTrace& trace) {
  return check_energy_identity(trace, trace.power);
}

struct FiniteSpeedResult {
  struct Violation {
    int probe;
    double t;
    double value;
  };
  std::vector<Violation> violations;
  double peak = 0.0;                 // max |p| over all probes and times
  std::vector<double> arrival;       // causal arrival time per probe
  double max_ahead_of_front = 0.0;   // largest |p| seen before any margin-reduced arrival
};

/// Asserts |p(probe, t)| <= rel_threshold * peak for all t < (1 - margin) *
/// (causal arrival time). Probes must lie in the identity region
/// r_disk < |x| <= a, where compressed and physical coordinates agree.
FiniteSpeedResult check_finite_speed(const ProbeSeries& series,
                                     const std::vector<Eigen::Vector2d>& positions, double r_disk,
                                     double a, const IncidentWave& wave,
                                     double rel_threshold = 1e-6, double margin = 0.1);

/// Causality of the truncation: the scattered front, emanating from inside
/// B_a at t >= 0, stays short of radius R through time T.
bool causal_truncation_ok(double R, double a, double c, double T, double slack = 0.0);

}  // namespace acsim
