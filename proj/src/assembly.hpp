#pragma once

#include <Eigen/Sparse>
#include <functional>
#include <memory>

#include "mesh.hpp"
#include "radial_map.hpp"

namespace acsim {

using SpMat = Eigen::SparseMatrix<double>;

struct AssemblyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Fluid/solid material constants: acoustic speed c and density rho1 of the
/// fluid, density rho2 and Lame parameters (mu, lambda) of the obstacle.
struct MaterialParams {
  double c = 1.0;
  double rho1 = 1.0;
  double rho2 = 1.0;
  double mu = 1.0;
  double lambda = 1.0;

  /// Validates c, rho1, rho2, mu > 0 and lambda + mu > 0.
  static MaterialParams make(double c, double rho1, double rho2, double mu, double lambda);
};

/// Unknown numbering over the mesh. Elastic block first: two interleaved
/// components per vertex touching an Elastic cell. Acoustic block second: one
/// scalar per vertex touching a Fluid cell, except vertices on the outer
/// circle, which are eliminated (p = 0 there). Interface vertices carry both.
struct DofMap {
  std::vector<int> elastic_base;    // per vertex: base of its 2 elastic dofs, or -1
  std::vector<int> acoustic_local;  // per vertex: local acoustic index, or -1
  int n_elastic = 0;
  int n_acoustic = 0;

  int size() const { return n_elastic + n_acoustic; }
  int elastic_dof(int vertex, int comp) const { return elastic_base[vertex] + comp; }
  bool has_elastic(int vertex) const { return elastic_base[vertex] >= 0; }
  bool has_acoustic(int vertex) const { return acoustic_local[vertex] >= 0; }
  /// Index of the acoustic dof in the full (elastic-first) vector.
  int acoustic_dof(int vertex) const { return n_elastic + acoustic_local[vertex]; }

  /// eliminate_outer = false keeps the Dirichlet vertices as unknowns; only
  /// used by tests that need the un-eliminated operators.
  static DofMap build(const Mesh& mesh, bool eliminate_outer = true);
};

/// Acoustic mass block, entries (beta/c^2) (phi_j, phi_k)_Omega over acoustic
/// dofs, beta evaluated at quadrature points through the map.
SpMat assemble_acoustic_mass(const Mesh& mesh, const RadialMap& map, const MaterialParams& params,
                             const DofMap& dofs);

/// Acoustic stiffness block a0: (M grad phi_j, grad phi_k)_Omega.
SpMat assemble_a0(const Mesh& mesh, const RadialMap& map, const DofMap& dofs);

/// Unweighted variants used by the diagnostics norms.
SpMat assemble_acoustic_mass_plain(const Mesh& mesh, const DofMap& dofs);
SpMat assemble_a0_plain(const Mesh& mesh, const DofMap& dofs);

struct ElasticBlocks {
  SpMat mass;       // rho1*rho2 (W_j, W_k)_D
  SpMat stiffness;  // rho1 * a1 = rho1 [ mu (grad:grad) + (lambda+mu) (div,div) ]
};
ElasticBlocks assemble_elastic(const Mesh& mesh, const MaterialParams& params, const DofMap& dofs);

/// Unweighted elastic matrices for the diagnostics norms.
SpMat assemble_elastic_mass_plain(const Mesh& mesh, const DofMap& dofs);
SpMat assemble_divdiv(const Mesh& mesh, const DofMap& dofs);
SpMat assemble_gradgrad(const Mesh& mesh, const DofMap& dofs);

struct InterfaceBlocks {
  SpMat E;  // n_elastic x n_acoustic: rho1 int_dD phi_k (n_D . W_j) ds
  SpMat L;  // n_acoustic x n_elastic: -rho1 int_dD (n_D . W_j) phi_k ds = -E^T
};
InterfaceBlocks assemble_interface(const Mesh& mesh, const MaterialParams& params,
                                   const DofMap& dofs);

/// Load vector (f(.,t), phi_k)_Omega over acoustic dofs; zero on the elastic
/// block. Full-length vector in the elastic-first ordering.
Eigen::VectorXd assemble_load(const Mesh& mesh, const DofMap& dofs,
                              const std::function<double(double, double, double)>& f, double t);

/// The semi-discrete block system A U'' + B U = F(t):
///   A = [ mass_el     0        ]      B = [ stiff_el  E        ]
///       [ L           mass_ac  ]          [ 0         stiff_ac ]
/// plus the unweighted matrices the energy/norm diagnostics need.
struct AssembledSystem {
  std::shared_ptr<const Mesh> mesh;
  RadialMap map;
  MaterialParams params;
  DofMap dofs;

  SpMat A, B;
  SpMat mass_ac, stiff_ac;  // acoustic blocks of A and B
  SpMat mass_el, stiff_el;  // elastic blocks of A and B
  SpMat E, L;

  SpMat mass_ac_plain, stiff_ac_plain;
  SpMat mass_el_plain, divdiv_el, gradgrad_el;

  Eigen::VectorXd elastic_part(const Eigen::VectorXd& full) const {
    return full.head(dofs.n_elastic);
  }
  Eigen::VectorXd acoustic_part(const Eigen::VectorXd& full) const {
    return full.tail(dofs.n_acoustic);
  }
};

AssembledSystem assemble_system(std::shared_ptr<const Mesh> mesh, const RadialMap& map,
                                const MaterialParams& params, bool eliminate_outer = true);

/// Coordinate-format text dump (row col value per line), for external
/// inspection when the debug flag is set.
void dump_coo(const SpMat& m, const std::string& path);

}  // namespace acsim
