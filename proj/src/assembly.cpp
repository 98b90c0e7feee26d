#include "assembly.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "quadrature.hpp"

namespace acsim {

MaterialParams MaterialParams::make(double c, double rho1, double rho2, double mu, double lambda) {
  if (!(c > 0.0)) throw std::domain_error("MaterialParams: need c > 0");
  if (!(rho1 > 0.0)) throw std::domain_error("MaterialParams: need rho1 > 0");
  if (!(rho2 > 0.0)) throw std::domain_error("MaterialParams: need rho2 > 0");
  if (!(mu > 0.0)) throw std::domain_error("MaterialParams: need mu > 0");
  if (!(lambda + mu > 0.0)) throw std::domain_error("MaterialParams: need lambda + mu > 0");
  return MaterialParams{c, rho1, rho2, mu, lambda};
}

DofMap DofMap::build(const Mesh& mesh, bool eliminate_outer) {
  const int nv = static_cast<int>(mesh.vertices.size());
  std::vector<bool> elastic(nv, false), fluid(nv, false), outer(nv, false);
  for (const auto& c : mesh.cells)
    for (int k = 0; k < 3; ++k) (c.region == Region::Elastic ? elastic : fluid)[c.v[k]] = true;
  if (eliminate_outer)
    for (const auto& e : mesh.boundary)
      if (e.tag == BoundaryTag::Outer) outer[e.v0] = outer[e.v1] = true;

  DofMap dofs;
  dofs.elastic_base.assign(nv, -1);
  dofs.acoustic_local.assign(nv, -1);
  for (int v = 0; v < nv; ++v)
    if (elastic[v]) {
      dofs.elastic_base[v] = dofs.n_elastic;
      dofs.n_elastic += 2;
    }
  for (int v = 0; v < nv; ++v)
    if (fluid[v] && !outer[v]) dofs.acoustic_local[v] = dofs.n_acoustic++;
  return dofs;
}

namespace {

struct TriGeom {
  Eigen::Vector2d x[3];
  double area;
  Eigen::Vector2d grad[3];  // constant P1 basis gradients

  explicit TriGeom(const Mesh& mesh, const Mesh::Cell& c) {
    for (int k = 0; k < 3; ++k) x[k] = mesh.vertices[c.v[k]];
    const Eigen::Vector2d e1 = x[1] - x[0], e2 = x[2] - x[0];
    const double det = e1.x() * e2.y() - e1.y() * e2.x();
    area = 0.5 * det;
    grad[0] = Eigen::Vector2d(x[1].y() - x[2].y(), x[2].x() - x[1].x()) / det;
    grad[1] = Eigen::Vector2d(x[2].y() - x[0].y(), x[0].x() - x[2].x()) / det;
    grad[2] = Eigen::Vector2d(x[0].y() - x[1].y(), x[1].x() - x[0].x()) / det;
  }

  Eigen::Vector2d point(const TriQuadPoint& q) const {
    return q.l0 * x[0] + q.l1 * x[1] + q.l2 * x[2];
  }
};

using Triplets = std::vector<Eigen::Triplet<double>>;

SpMat from_triplets(int rows, int cols, const Triplets& t) {
  SpMat m(rows, cols);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

double beta_at(const RadialMap& map, const Eigen::Vector2d& x, double cell_index) {
  const double r = x.norm();
  if (r > map.b * (1.0 + 1e-10))
    throw AssemblyError("quadrature point at r=" + std::to_string(r) + " outside the map domain b=" +
                        std::to_string(map.b) + " (mesh/map mismatch, cell " +
                        std::to_string(static_cast<long>(cell_index)) + ")");
  if (map.is_identity() || r <= map.a) return 1.0;
  const MapValue m = eval_map(map, std::min(r, map.b));
  return m.zeta * m.zeta_prime / r;
}

Eigen::Matrix2d gradient_weight_at(const RadialMap& map, const Eigen::Vector2d& x,
                                   double cell_index) {
  const double r = x.norm();
  if (r > map.b * (1.0 + 1e-10))
    throw AssemblyError("quadrature point at r=" + std::to_string(r) + " outside the map domain b=" +
                        std::to_string(map.b) + " (mesh/map mismatch, cell " +
                        std::to_string(static_cast<long>(cell_index)) + ")");
  if (map.is_identity() || r <= map.a) return Eigen::Matrix2d::Identity();
  return coefficients_2d(map, std::min(r, map.b), std::atan2(x.y(), x.x())).M;
}

// Weighted scalar mass over Fluid cells: entries int w(x) phi_j phi_k dx.
SpMat scalar_mass(const Mesh& mesh, const DofMap& dofs,
                  const std::function<double(const Eigen::Vector2d&, int)>& weight,
                  std::span<const TriQuadPoint> rule) {
  Triplets trip;
  for (size_t ci = 0; ci < mesh.cells.size(); ++ci) {
    const auto& c = mesh.cells[ci];
    if (c.region != Region::Fluid) continue;
    const TriGeom g(mesh, c);
    double local[3][3] = {};
    for (const TriQuadPoint& q : rule) {
      const double w = weight(g.point(q), static_cast<int>(ci)) * q.w * g.area;
      const double phi[3] = {q.l0, q.l1, q.l2};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) local[i][j] += w * phi[i] * phi[j];
    }
    for (int i = 0; i < 3; ++i) {
      if (!dofs.has_acoustic(c.v[i])) continue;
      for (int j = 0; j < 3; ++j) {
        if (!dofs.has_acoustic(c.v[j])) continue;
        trip.emplace_back(dofs.acoustic_local[c.v[i]], dofs.acoustic_local[c.v[j]], local[i][j]);
      }
    }
  }
  return from_triplets(dofs.n_acoustic, dofs.n_acoustic, trip);
}

SpMat scalar_stiffness(const Mesh& mesh, const DofMap& dofs,
                       const std::function<Eigen::Matrix2d(const Eigen::Vector2d&, int)>& weight,
                       std::span<const TriQuadPoint> rule) {
  Triplets trip;
  for (size_t ci = 0; ci < mesh.cells.size(); ++ci) {
    const auto& c = mesh.cells[ci];
    if (c.region != Region::Fluid) continue;
    const TriGeom g(mesh, c);
    // Gradients are constant, so only the matrix coefficient needs quadrature.
    Eigen::Matrix2d mbar = Eigen::Matrix2d::Zero();
    for (const TriQuadPoint& q : rule) mbar += q.w * weight(g.point(q), static_cast<int>(ci));
    mbar *= g.area;
    for (int i = 0; i < 3; ++i) {
      if (!dofs.has_acoustic(c.v[i])) continue;
      for (int j = 0; j < 3; ++j) {
        if (!dofs.has_acoustic(c.v[j])) continue;
        trip.emplace_back(dofs.acoustic_local[c.v[i]], dofs.acoustic_local[c.v[j]],
                          g.grad[i].dot(mbar * g.grad[j]));
      }
    }
  }
  return from_triplets(dofs.n_acoustic, dofs.n_acoustic, trip);
}

// Elastic matrices share one kernel: per-cell coefficients of the mass,
// grad:grad, and div-div pairings.
SpMat elastic_assembly(const Mesh& mesh, const DofMap& dofs, double mass_w, double grad_w,
                       double div_w) {
  Triplets trip;
  for (const auto& c : mesh.cells) {
    if (c.region != Region::Elastic) continue;
    const TriGeom g(mesh, c);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        // Exact P1 mass: area/6 on the diagonal, area/12 off it.
        const double mij = g.area * (i == j ? 1.0 / 6.0 : 1.0 / 12.0);
        const double gij = g.area * g.grad[i].dot(g.grad[j]);
        for (int alpha = 0; alpha < 2; ++alpha) {
          for (int beta = 0; beta < 2; ++beta) {
            double val = 0.0;
            if (alpha == beta) val += mass_w * mij + grad_w * gij;
            val += div_w * g.area * g.grad[i][alpha] * g.grad[j][beta];
            if (val != 0.0)
              trip.emplace_back(dofs.elastic_dof(c.v[i], alpha), dofs.elastic_dof(c.v[j], beta),
                                val);
          }
        }
      }
    }
  }
  return from_triplets(dofs.n_elastic, dofs.n_elastic, trip);
}

}  // namespace

SpMat assemble_acoustic_mass(const Mesh& mesh, const RadialMap& map, const MaterialParams& params,
                             const DofMap& dofs) {
  if (dofs.n_acoustic == 0) throw AssemblyError("assemble_acoustic_mass: no acoustic dofs");
  const double inv_c2 = 1.0 / (params.c * params.c);
  return scalar_mass(
      mesh, dofs,
      [&](const Eigen::Vector2d& x, int ci) { return inv_c2 * beta_at(map, x, ci); },
      tri_rule_deg5());
}

SpMat assemble_acoustic_mass_plain(const Mesh& mesh, const DofMap& dofs) {
  return scalar_mass(
      mesh, dofs, [](const Eigen::Vector2d&, int) { return 1.0; }, tri_rule_deg2());
}

SpMat assemble_a0(const Mesh& mesh, const RadialMap& map, const DofMap& dofs) {
  if (dofs.n_acoustic == 0) throw AssemblyError("assemble_a0: no acoustic dofs");
  return scalar_stiffness(
      mesh, dofs,
      [&](const Eigen::Vector2d& x, int ci) { return gradient_weight_at(map, x, ci); },
      tri_rule_deg5());
}

SpMat assemble_a0_plain(const Mesh& mesh, const DofMap& dofs) {
  return scalar_stiffness(
      mesh, dofs, [](const Eigen::Vector2d&, int) { return Eigen::Matrix2d::Identity(); },
      tri_rule_deg2());
}

ElasticBlocks assemble_elastic(const Mesh& mesh, const MaterialParams& params, const DofMap& dofs) {
  if (dofs.n_elastic == 0) throw AssemblyError("assemble_elastic: no elastic dofs");
  ElasticBlocks blocks;
  blocks.mass = elastic_assembly(mesh, dofs, params.rho1 * params.rho2, 0.0, 0.0);
  blocks.stiffness = elastic_assembly(mesh, dofs, 0.0, params.rho1 * params.mu,
                                      params.rho1 * (params.lambda + params.mu));
  return blocks;
}

SpMat assemble_elastic_mass_plain(const Mesh& mesh, const DofMap& dofs) {
  return elastic_assembly(mesh, dofs, 1.0, 0.0, 0.0);
}

SpMat assemble_divdiv(const Mesh& mesh, const DofMap& dofs) {
  return elastic_assembly(mesh, dofs, 0.0, 0.0, 1.0);
}

SpMat assemble_gradgrad(const Mesh& mesh, const DofMap& dofs) {
  return elastic_assembly(mesh, dofs, 0.0, 1.0, 0.0);
}

InterfaceBlocks assemble_interface(const Mesh& mesh, const MaterialParams& params,
                                   const DofMap& dofs) {
  Triplets te, tl;
  bool any = false;
  for (size_t bi = 0; bi < mesh.boundary.size(); ++bi) {
    const auto& e = mesh.boundary[bi];
    if (e.tag != BoundaryTag::Interface) continue;
    any = true;
    if (!(e.normal.norm() > 0.5))
      throw AssemblyError("interface edge " + std::to_string(bi) + " has undefined normal");
    const Eigen::Vector2d x0 = mesh.vertices[e.v0], x1 = mesh.vertices[e.v1];
    const double len = (x1 - x0).norm();
    const int verts[2] = {e.v0, e.v1};
    for (int i = 0; i < 2; ++i) {
      if (!dofs.has_elastic(verts[i]))
        throw AssemblyError("interface vertex " + std::to_string(verts[i]) + " has no elastic dof");
      for (int j = 0; j < 2; ++j) {
        if (!dofs.has_acoustic(verts[j])) continue;
        // int_e phi_i phi_j ds on a straight edge, exact.
        const double pij = len * (i == j ? 1.0 / 3.0 : 1.0 / 6.0);
        for (int alpha = 0; alpha < 2; ++alpha) {
          const double val = params.rho1 * pij * e.normal[alpha];
          te.emplace_back(dofs.elastic_dof(verts[i], alpha), dofs.acoustic_local[verts[j]], val);
          tl.emplace_back(dofs.acoustic_local[verts[j]], dofs.elastic_dof(verts[i], alpha), -val);
        }
      }
    }
  }
  if (!any) throw AssemblyError("assemble_interface: mesh has no interface edges");
  InterfaceBlocks blocks;
  blocks.E = from_triplets(dofs.n_elastic, dofs.n_acoustic, te);
  blocks.L = from_triplets(dofs.n_acoustic, dofs.n_elastic, tl);
  return blocks;
}

Eigen::VectorXd assemble_load(const Mesh& mesh, const DofMap& dofs,
                              const std::function<double(double, double, double)>& f, double t) {
  Eigen::VectorXd load = Eigen::VectorXd::Zero(dofs.size());
  for (const auto& c : mesh.cells) {
    if (c.region != Region::Fluid) continue;
    const TriGeom g(mesh, c);
    for (const TriQuadPoint& q : tri_rule_deg5()) {
      const Eigen::Vector2d x = g.point(q);
      const double w = q.w * g.area * f(x.x(), x.y(), t);
      const double phi[3] = {q.l0, q.l1, q.l2};
      for (int k = 0; k < 3; ++k)
        if (dofs.has_acoustic(c.v[k])) load[dofs.acoustic_dof(c.v[k])] += w * phi[k];
    }
  }
  return load;
}

namespace {

void append_block(Triplets& trip, const SpMat& block, int row0, int col0) {
  for (int k = 0; k < block.outerSize(); ++k)
    for (SpMat::InnerIterator it(block, k); it; ++it)
      trip.emplace_back(row0 + static_cast<int>(it.row()), col0 + static_cast<int>(it.col()),
                        it.value());
}

}  // namespace

AssembledSystem assemble_system(std::shared_ptr<const Mesh> mesh, const RadialMap& map,
                                const MaterialParams& params, bool eliminate_outer) {
  AssembledSystem sys;
  sys.mesh = std::move(mesh);
  sys.map = map;
  sys.params = params;
  sys.dofs = DofMap::build(*sys.mesh, eliminate_outer);

  sys.mass_ac = assemble_acoustic_mass(*sys.mesh, map, params, sys.dofs);
  sys.stiff_ac = assemble_a0(*sys.mesh, map, sys.dofs);
  const ElasticBlocks el = assemble_elastic(*sys.mesh, params, sys.dofs);
  sys.mass_el = el.mass;
  sys.stiff_el = el.stiffness;
  const InterfaceBlocks ib = assemble_interface(*sys.mesh, params, sys.dofs);
  sys.E = ib.E;
  sys.L = ib.L;

  sys.mass_ac_plain = assemble_acoustic_mass_plain(*sys.mesh, sys.dofs);
  sys.stiff_ac_plain = assemble_a0_plain(*sys.mesh, sys.dofs);
  sys.mass_el_plain = assemble_elastic_mass_plain(*sys.mesh, sys.dofs);
  sys.divdiv_el = assemble_divdiv(*sys.mesh, sys.dofs);
  sys.gradgrad_el = assemble_gradgrad(*sys.mesh, sys.dofs);

  const int ne = sys.dofs.n_elastic;
  const int n = sys.dofs.size();
  Triplets ta, tb;
  append_block(ta, sys.mass_el, 0, 0);
  append_block(ta, sys.L, ne, 0);
  append_block(ta, sys.mass_ac, ne, ne);
  append_block(tb, sys.stiff_el, 0, 0);
  append_block(tb, sys.E, 0, ne);
  append_block(tb, sys.stiff_ac, ne, ne);
  sys.A = from_triplets(n, n, ta);
  sys.B = from_triplets(n, n, tb);
  return sys;
}

void dump_coo(const SpMat& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw AssemblyError("cannot open " + path + " for writing");
  char buf[96];
  for (int k = 0; k < m.outerSize(); ++k)
    for (SpMat::InnerIterator it(m, k); it; ++it) {
      std::snprintf(buf, sizeof buf, "%ld %ld %.17g\n", static_cast<long>(it.row()),
                    static_cast<long>(it.col()), it.value());
      out << buf;
    }
}

}  // namespace acsim
