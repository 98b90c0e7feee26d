#pragma once

#include <Eigen/Dense>
#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace acsim {

enum class Region { Elastic, Fluid };
enum class BoundaryTag { Interface, Outer };

struct MeshError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Conforming triangulation of the compressed computational disk B_b:
/// the obstacle D (Elastic cells) surrounded by the fluid annulus (Fluid
/// cells), with the coupling interface (boundary of D) and the outer
/// Dirichlet circle tagged. Immutable after construction.
struct Mesh {
  struct Cell {
    std::array<int, 3> v;  // CCW vertex indices
    Region region;
  };
  struct BoundaryEdge {
    int v0, v1;
    BoundaryTag tag;
    Eigen::Vector2d normal;  // for Interface: unit n_D pointing from D into the fluid
  };

  std::vector<Eigen::Vector2d> vertices;
  std::vector<Cell> cells;
  std::vector<BoundaryEdge> boundary;

  int n_interface_edges() const;
  int n_outer_edges() const;
  double min_edge_length() const;
  double min_angle_deg() const;
  double region_area(Region region) const;

  /// Structural invariants: index ranges, positive orientation, every
  /// interface edge shared by exactly one Elastic and one Fluid cell, every
  /// outer edge owned by exactly one Fluid cell, tags complete and exclusive.
  /// Throws MeshError naming the offending entity. Also (re)derives the
  /// interface normals from the adjacent cells.
  void validate_and_finalize();
};

/// Structured polar mesh of the disk of radius r_disk (Elastic) plus the
/// annulus r_disk <= r <= b (Fluid, n_radial uniform layers of n_angular
/// sectors each). Inside the disk the angular count is coarsened toward the
/// center (conforming 2:1 transitions, small fan core) so the min-angle bound
/// holds at high angular resolution. `grade_outward` additionally doubles the
/// angular count in the annulus whenever cells become too stretched; used for
/// large uncompressed domains, off for the canonical compressed meshes.
Mesh generate_disk_annulus(double r_disk, double a, double b, int n_radial, int n_angular,
                           bool grade_outward = false);

/// Plain-text mesh format:
///   dim 2
///   vertices N       followed by N lines "x y"
///   cells M          followed by M lines "i j k region"
///   boundary K       followed by K lines "i j tag"
/// with region in {ELASTIC, FLUID} and tag in {INTERFACE, OUTER}.
Mesh load_mesh(const std::string& path);
void save_mesh(const Mesh& mesh, const std::string& path);

}  // namespace acsim
