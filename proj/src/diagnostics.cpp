#include "diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace acsim {

namespace {

double quad_form(const SpMat& m, const Eigen::VectorXd& x) { return x.dot(m * x); }

}  // namespace

EnergyParts compute_energy(const AssembledSystem& sys, const StateVector& state) {
  const Eigen::VectorXd up = sys.acoustic_part(state.U), vp = sys.acoustic_part(state.V);
  const Eigen::VectorXd ue = sys.elastic_part(state.U), ve = sys.elastic_part(state.V);
  const Eigen::VectorXd we = sys.elastic_part(state.W);
  EnergyParts parts;
  parts.E1 = quad_form(sys.mass_ac, vp) + quad_form(sys.stiff_ac, up);
  parts.E2 = quad_form(sys.mass_el, we) + quad_form(sys.stiff_el, ve);
  parts.E2_alt = quad_form(sys.mass_el, ve) + quad_form(sys.stiff_el, ue);
  parts.E = parts.E1 + parts.E2;
  return parts;
}

FieldNorms compute_field_norms(const AssembledSystem& sys, const StateVector& state) {
  const Eigen::VectorXd up = sys.acoustic_part(state.U);
  const Eigen::VectorXd ue = sys.elastic_part(state.U), ve = sys.elastic_part(state.V);
  FieldNorms norms;
  norms.p = std::sqrt(quad_form(sys.mass_ac_plain, up));
  norms.gradp = std::sqrt(quad_form(sys.stiff_ac_plain, up));
  norms.ut = std::sqrt(quad_form(sys.mass_el_plain, ve));
  norms.divu = std::sqrt(quad_form(sys.divdiv_el, ue));
  norms.gradu = std::sqrt(quad_form(sys.gradgrad_el, ue));
  return norms;
}

void EnergyTrace::append(const AssembledSystem& sys, const StateVector& state,
                         const Eigen::VectorXd& load, const LoadProvider& loads) {
  const EnergyParts parts = compute_energy(sys, state);
  const FieldNorms norms = compute_field_norms(sys, state);
  times.push_back(state.t);
  E1.push_back(parts.E1);
  E2.push_back(parts.E2);
  E2_alt.push_back(parts.E2_alt);
  E.push_back(parts.E);
  norm_p.push_back(norms.p);
  norm_gradp.push_back(norms.gradp);
  norm_ut.push_back(norms.ut);
  norm_divu.push_back(norms.divu);
  norm_gradu.push_back(norms.gradu);

  double pw = 2.0 * sys.acoustic_part(state.V).dot(sys.acoustic_part(load));
  if (loads.elastic_rate) {
    const Eigen::VectorXd rate = loads.elastic_rate(state.t);
    pw += 2.0 * sys.elastic_part(state.W).dot(sys.elastic_part(rate));
  }
  power.push_back(pw);
}

void write_energy_csv(const EnergyTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DiagnosticError("cannot open " + path + " for writing");
  out << "t,E1,E2,E,norm_p,norm_gradp,norm_ut,norm_divu,norm_gradu\n";
  char buf[360];
  for (size_t i = 0; i < trace.size(); ++i) {
    std::snprintf(buf, sizeof buf,
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", trace.times[i],
                  trace.E1[i], trace.E2[i], trace.E[i], trace.norm_p[i], trace.norm_gradp[i],
                  trace.norm_ut[i], trace.norm_divu[i], trace.norm_gradu[i]);
    out << buf;
  }
  if (!out) throw DiagnosticError("write to " + path + " failed");
}

void write_probe_csv(const ProbeSeries& probes, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DiagnosticError("cannot open " + path + " for writing");
  out << "t";
  for (size_t p = 0; p < probes.values.size(); ++p) out << ",probe_" << p;
  out << "\n";
  char buf[40];
  for (size_t i = 0; i < probes.times.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", probes.times[i]);
    out << buf;
    for (const auto& series : probes.values) {
      std::snprintf(buf, sizeof buf, ",%.17g", series[i]);
      out << buf;
    }
    out << "\n";
  }
  if (!out) throw DiagnosticError("write to " + path + " failed");
}

double check_energy_identity(const EnergyTrace& trace, std::span<const double> source_power) {
  if (trace.size() == 0) throw DiagnosticError("check_energy_identity: empty trace");
  if (source_power.size() != trace.size())
    throw DiagnosticError("check_energy_identity: power series does not match the sample grid");

  const double e0 = trace.E.front();
  double emax = 0.0;
  for (const double e : trace.E) emax = std::max(emax, e);
  const double denom = std::max(e0, emax);

  double work = 0.0, worst = std::abs(trace.E.front() - e0);
  for (size_t i = 1; i < trace.size(); ++i) {
    const double dt = trace.times[i] - trace.times[i - 1];
    work += 0.5 * dt * (source_power[i] + source_power[i - 1]);
    worst = std::max(worst, std::abs(trace.E[i] - e0 - work));
  }
  return denom > 0.0 ? worst / denom : 0.0;
}

FiniteSpeedResult check_finite_speed(const ProbeSeries& series,
                                     const std::vector<Eigen::Vector2d>& positions, double r_disk,
                                     double a, const IncidentWave& wave, double rel_threshold,
                                     double margin) {
  if (series.values.size() != positions.size())
    throw DiagnosticError("check_finite_speed: probe count mismatch");
  for (size_t p = 0; p < positions.size(); ++p) {
    const double r = positions[p].norm();
    if (!(r > r_disk) || !(r <= a))
      throw ConfigError("check_finite_speed: probe " + std::to_string(p) +
                        " outside the identity region r_disk < |x| <= a");
  }

  FiniteSpeedResult result;
  for (size_t p = 0; p < positions.size(); ++p) {
    result.arrival.push_back(wave.scattered_arrival_time(positions[p], r_disk));
    for (const double v : series.values[p]) result.peak = std::max(result.peak, std::abs(v));
  }
  const double threshold = rel_threshold * result.peak;
  for (size_t p = 0; p < positions.size(); ++p) {
    const double cutoff = (1.0 - margin) * result.arrival[p];
    for (size_t i = 0; i < series.times.size(); ++i) {
      if (series.times[i] >= cutoff) break;
      const double v = std::abs(series.values[p][i]);
      result.max_ahead_of_front = std::max(result.max_ahead_of_front, v);
      if (v > threshold)
        result.violations.push_back({static_cast<int>(p), series.times[i], series.values[p][i]});
    }
  }
  return result;
}

bool causal_truncation_ok(double R, double a, double c, double T, double slack) {
  return R > a + c * T + slack;
}

}  // namespace acsim
