#pragma once

#include <functional>
#include <string>

#include "config.hpp"
#include "diagnostics.hpp"
#include "radial_map.hpp"

namespace acsim {

/// Closed-form solution of the transformed acoustic equation together with
/// the source and initial traces that make it exact. All space arguments are
/// compressed-domain Cartesian coordinates. The catalog fields vanish on the
/// outer circle and have a double zero at the obstacle boundary, so the pair
/// (p_exact, u = 0) solves the full coupled problem.
struct ManufacturedCase {
  std::string id;
  double omega = 0.0;
  std::function<double(double, double, double)> p;     // p_exact(x, y, t)
  std::function<double(double, double, double)> dpdt;  // time derivative
  std::function<double(double, double, double)> f;     // matching source
  std::function<double(double, double)> g;             // p at t = 0
  std::function<double(double, double)> h;             // p_t at t = 0
};

/// Catalog ids: "zero", "radial" (sin(omega t) times a radial polynomial of
/// the physical coordinates, pulled back through the map). Unknown id throws
/// ConfigError.
ManufacturedCase make_manufactured(const RadialMap& map, const MaterialParams& params,
                                   const std::string& id, double r_disk, double omega);

/// Max residual of (beta/c^2) p_tt - div(M grad p) - f at n random points in
/// the fluid annulus, relative to the local magnitude of the three terms; the
/// divergence is evaluated with the finite-difference oracle, independent of
/// the closed-form f. Sample points keep clear of the map's C^1 breakpoint
/// at r = a, where the difference stencil loses accuracy.
double manufactured_residual(const ManufacturedCase& mms, const RadialMap& map,
                             const MaterialParams& params, double r_disk, int n_points,
                             unsigned long long seed);

/// Central-difference div(M grad v) at a compressed Cartesian point.
double fd_div_m_grad(const RadialMap& map, const std::function<double(double, double)>& v,
                     const Eigen::Vector2d& x, double h);

enum class IntegralRegion { Omega, Disk, InterfaceCircle };

/// Tensor Gauss-Legendre quadrature in polar coordinates over a background
/// grid of `panels` x `panels` cells, independent of any FEM mesh. order in
/// {5, 7}; the error decays like panels^(-2*order) for smooth integrands.
double reference_integral(const std::function<double(double, double)>& field,
                          IntegralRegion region, double r_disk, double b, int order,
                          int panels = 64);

/// Reference solve on the physical domain B_R with the identity map, same
/// assembly and integrator, matched radial resolution and time step; returns
/// the probe series for comparison in the shared region r <= a. Requires the
/// causal margin R > a + c T + pulse width.
ProbeSeries direct_big_domain_solve(const ScenarioConfig& compressed_cfg, double dt);

}  // namespace acsim
