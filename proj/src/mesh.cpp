#include "mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

namespace acsim {

namespace {

double signed_area(const Eigen::Vector2d& p0, const Eigen::Vector2d& p1,
                   const Eigen::Vector2d& p2) {
  const Eigen::Vector2d e1 = p1 - p0, e2 = p2 - p0;
  return 0.5 * (e1.x() * e2.y() - e1.y() * e2.x());
}

Eigen::Vector2d centroid(const Mesh& mesh, const Mesh::Cell& c) {
  return (mesh.vertices[c.v[0]] + mesh.vertices[c.v[1]] + mesh.vertices[c.v[2]]) / 3.0;
}

}  // namespace

int Mesh::n_interface_edges() const {
  return static_cast<int>(
      std::count_if(boundary.begin(), boundary.end(),
                    [](const BoundaryEdge& e) { return e.tag == BoundaryTag::Interface; }));
}

int Mesh::n_outer_edges() const {
  return static_cast<int>(boundary.size()) - n_interface_edges();
}

double Mesh::min_edge_length() const {
  double m = std::numeric_limits<double>::max();
  for (const Cell& c : cells)
    for (int k = 0; k < 3; ++k)
      m = std::min(m, (vertices[c.v[k]] - vertices[c.v[(k + 1) % 3]]).norm());
  return m;
}

double Mesh::min_angle_deg() const {
  double m = std::numbers::pi;
  for (const Cell& c : cells) {
    for (int k = 0; k < 3; ++k) {
      const Eigen::Vector2d u = vertices[c.v[(k + 1) % 3]] - vertices[c.v[k]];
      const Eigen::Vector2d v = vertices[c.v[(k + 2) % 3]] - vertices[c.v[k]];
      m = std::min(m, std::acos(std::clamp(u.dot(v) / (u.norm() * v.norm()), -1.0, 1.0)));
    }
  }
  return m * 180.0 / std::numbers::pi;
}

double Mesh::region_area(Region region) const {
  double area = 0.0;
  for (const Cell& c : cells)
    if (c.region == region)
      area += signed_area(vertices[c.v[0]], vertices[c.v[1]], vertices[c.v[2]]);
  return area;
}

void Mesh::validate_and_finalize() {
  const int nv = static_cast<int>(vertices.size());
  if (nv < 3) throw MeshError("mesh has fewer than 3 vertices");

  for (size_t ci = 0; ci < cells.size(); ++ci) {
    const Cell& c = cells[ci];
    for (int k = 0; k < 3; ++k)
      if (c.v[k] < 0 || c.v[k] >= nv)
        throw MeshError("cell " + std::to_string(ci) + " references vertex " +
                        std::to_string(c.v[k]) + " outside [0, " + std::to_string(nv) + ")");
    if (c.v[0] == c.v[1] || c.v[1] == c.v[2] || c.v[0] == c.v[2])
      throw MeshError("cell " + std::to_string(ci) + " has repeated vertices");
    if (signed_area(vertices[c.v[0]], vertices[c.v[1]], vertices[c.v[2]]) <= 0.0)
      throw MeshError("cell " + std::to_string(ci) + " is not positively oriented");
  }

  // Edge incidence over cell edges.
  struct Incidence {
    int count = 0;
    int cell[2] = {-1, -1};
  };
  std::map<std::pair<int, int>, Incidence> edges;
  for (size_t ci = 0; ci < cells.size(); ++ci) {
    for (int k = 0; k < 3; ++k) {
      int i = cells[ci].v[k], j = cells[ci].v[(k + 1) % 3];
      auto& inc = edges[{std::min(i, j), std::max(i, j)}];
      if (inc.count < 2) inc.cell[inc.count] = static_cast<int>(ci);
      ++inc.count;
      if (inc.count > 2)
        throw MeshError("edge (" + std::to_string(i) + "," + std::to_string(j) +
                        ") is shared by more than two cells");
    }
  }

  std::map<std::pair<int, int>, int> tagged;
  for (size_t bi = 0; bi < boundary.size(); ++bi) {
    BoundaryEdge& e = boundary[bi];
    if (e.v0 < 0 || e.v0 >= nv || e.v1 < 0 || e.v1 >= nv)
      throw MeshError("boundary edge " + std::to_string(bi) + " references vertex outside [0, " +
                      std::to_string(nv) + ")");
    if (e.v0 == e.v1) throw MeshError("boundary edge " + std::to_string(bi) + " is degenerate");
    const auto key = std::make_pair(std::min(e.v0, e.v1), std::max(e.v0, e.v1));
    const auto it = edges.find(key);
    if (it == edges.end())
      throw MeshError("boundary edge " + std::to_string(bi) + " is not an edge of any cell");
    if (!tagged.emplace(key, static_cast<int>(bi)).second)
      throw MeshError("boundary edge " + std::to_string(bi) + " duplicates an earlier entry");

    const Incidence& inc = it->second;
    if (e.tag == BoundaryTag::Interface) {
      if (inc.count != 2)
        throw MeshError("interface edge " + std::to_string(bi) +
                        " is not shared by exactly two cells");
      const Region r0 = cells[inc.cell[0]].region, r1 = cells[inc.cell[1]].region;
      if (r0 == r1)
        throw MeshError("interface edge " + std::to_string(bi) + " bounded by two " +
                        (r0 == Region::Fluid ? "FLUID" : "ELASTIC") + " cells");
      // n_D: unit edge perpendicular pointing from the elastic side into the fluid.
      const int elastic = cells[inc.cell[0]].region == Region::Elastic ? inc.cell[0] : inc.cell[1];
      const Eigen::Vector2d t = vertices[e.v1] - vertices[e.v0];
      Eigen::Vector2d n(t.y(), -t.x());
      n.normalize();
      const Eigen::Vector2d mid = 0.5 * (vertices[e.v0] + vertices[e.v1]);
      if (n.dot(centroid(*this, cells[elastic]) - mid) > 0.0) n = -n;
      e.normal = n;
    } else {
      if (inc.count != 1)
        throw MeshError("outer edge " + std::to_string(bi) + " is shared by two cells");
      if (cells[inc.cell[0]].region != Region::Fluid)
        throw MeshError("outer edge " + std::to_string(bi) + " belongs to an ELASTIC cell");
      const Eigen::Vector2d t = vertices[e.v1] - vertices[e.v0];
      Eigen::Vector2d n(t.y(), -t.x());
      n.normalize();
      const Eigen::Vector2d mid = 0.5 * (vertices[e.v0] + vertices[e.v1]);
      if (n.dot(centroid(*this, cells[inc.cell[0]]) - mid) > 0.0) n = -n;
      e.normal = n;
    }
  }

  // Completeness: hull edges must be tagged OUTER, elastic/fluid contact edges
  // INTERFACE, and nothing else may carry a tag.
  for (const auto& [key, inc] : edges) {
    const auto t = tagged.find(key);
    if (inc.count == 1) {
      if (t == tagged.end())
        throw MeshError("hull edge (" + std::to_string(key.first) + "," +
                        std::to_string(key.second) + ") carries no OUTER tag");
      if (boundary[t->second].tag != BoundaryTag::Outer)
        throw MeshError("hull edge (" + std::to_string(key.first) + "," +
                        std::to_string(key.second) + ") tagged INTERFACE");
    } else {
      const bool contact = cells[inc.cell[0]].region != cells[inc.cell[1]].region;
      if (contact && t == tagged.end())
        throw MeshError("elastic/fluid contact edge (" + std::to_string(key.first) + "," +
                        std::to_string(key.second) + ") carries no INTERFACE tag");
      if (!contact && t != tagged.end())
        throw MeshError("interior edge (" + std::to_string(key.first) + "," +
                        std::to_string(key.second) + ") carries a boundary tag");
    }
  }
}

namespace {

struct Ring {
  double radius;
  int first;  // index of vertex at angle 0
  int count;
};

Ring push_ring(std::vector<Eigen::Vector2d>& vertices, double radius, int count) {
  const Ring ring{radius, static_cast<int>(vertices.size()), count};
  for (int j = 0; j < count; ++j) {
    const double ang = 2.0 * std::numbers::pi * j / count;
    vertices.emplace_back(radius * std::cos(ang), radius * std::sin(ang));
  }
  return ring;
}

void push_cell(Mesh& mesh, int i, int j, int k, Region region) {
  if (signed_area(mesh.vertices[i], mesh.vertices[j], mesh.vertices[k]) < 0.0) std::swap(j, k);
  mesh.cells.push_back({{i, j, k}, region});
}

// Layer between two rings with equal counts, split quads with alternating
// diagonals.
void quad_layer(Mesh& mesh, const Ring& inner, const Ring& outer, Region region) {
  const int n = inner.count;
  for (int j = 0; j < n; ++j) {
    const int i0 = inner.first + j, i1 = inner.first + (j + 1) % n;
    const int o0 = outer.first + j, o1 = outer.first + (j + 1) % n;
    if (j % 2 == 0) {
      push_cell(mesh, i0, o0, o1, region);
      push_cell(mesh, i0, o1, i1, region);
    } else {
      push_cell(mesh, i0, o0, i1, region);
      push_cell(mesh, o0, o1, i1, region);
    }
  }
}

// Conforming 2:1 layer: outer ring has twice the inner count, aligned so that
// outer vertex 2j sits at the same angle as inner vertex j.
void transition_layer(Mesh& mesh, const Ring& inner, const Ring& outer, Region region) {
  const int k = inner.count;
  for (int j = 0; j < k; ++j) {
    const int i0 = inner.first + j, i1 = inner.first + (j + 1) % k;
    const int o0 = outer.first + 2 * j;
    const int o1 = outer.first + (2 * j + 1) % outer.count;
    const int o2 = outer.first + (2 * j + 2) % outer.count;
    push_cell(mesh, i0, o0, o1, region);
    push_cell(mesh, i0, o1, i1, region);
    push_cell(mesh, i1, o1, o2, region);
  }
}

void fan_core(Mesh& mesh, int center, const Ring& ring, Region region) {
  for (int j = 0; j < ring.count; ++j)
    push_cell(mesh, center, ring.first + j, ring.first + (j + 1) % ring.count, region);
}

}  // namespace

Mesh generate_disk_annulus(double r_disk, double a, double b, int n_radial, int n_angular,
                           bool grade_outward) {
  if (!(r_disk > 0.0) || !(a > r_disk) || !(b > a))
    throw MeshError("generate_disk_annulus: need 0 < r_disk < a < b, got r_disk=" +
                    std::to_string(r_disk) + " a=" + std::to_string(a) +
                    " b=" + std::to_string(b));
  if (n_radial < 2 || n_angular < 8)
    throw MeshError("generate_disk_annulus: need n_radial >= 2 and n_angular >= 8");

  Mesh mesh;
  const double dr = (b - r_disk) / n_radial;

  // Disk rings from the interface inward, coarsening the angular count.
  std::vector<std::pair<double, int>> plan;  // (radius, count), outermost first
  const int m = std::max(1, static_cast<int>(std::lround(r_disk / dr)));
  int count = n_angular;
  for (int i = 0; i < m; ++i) {
    const double r = r_disk * static_cast<double>(m - i) / m;
    if (i > 0) {
      const double target = n_angular * r / r_disk;
      if (count % 2 == 0 && count / 2 >= 8 && count / 2 >= target) count /= 2;
    }
    plan.emplace_back(r, count);
  }
  // Keep the fan apex angle acceptable even for shallow disks.
  while (plan.back().second > 16 && plan.back().second % 2 == 0 && plan.back().second / 2 >= 8)
    plan.emplace_back(plan.back().first / 2.0, plan.back().second / 2);

  std::vector<Ring> disk_rings;
  for (const auto& [r, n] : plan) disk_rings.push_back(push_ring(mesh.vertices, r, n));

  const int center = static_cast<int>(mesh.vertices.size());
  mesh.vertices.emplace_back(0.0, 0.0);

  for (size_t i = 0; i + 1 < disk_rings.size(); ++i) {
    const Ring& outer = disk_rings[i];
    const Ring& inner = disk_rings[i + 1];
    if (inner.count == outer.count)
      quad_layer(mesh, inner, outer, Region::Elastic);
    else
      transition_layer(mesh, inner, outer, Region::Elastic);
  }
  fan_core(mesh, center, disk_rings.back(), Region::Elastic);

  // Annulus rings from the interface outward, optionally refining the angular
  // count to keep the cell aspect near 1 on large domains.
  std::vector<Ring> ann_rings = {disk_rings.front()};
  for (int j = 1; j <= n_radial; ++j) {
    const double r = j == n_radial ? b : r_disk + (b - r_disk) * j / n_radial;
    int n = ann_rings.back().count;
    if (grade_outward && 2.0 * std::numbers::pi * r / n > 1.45 * dr) n *= 2;
    ann_rings.push_back(push_ring(mesh.vertices, r, n));
  }
  for (size_t j = 0; j + 1 < ann_rings.size(); ++j) {
    const Ring& inner = ann_rings[j];
    const Ring& outer = ann_rings[j + 1];
    if (inner.count == outer.count)
      quad_layer(mesh, inner, outer, Region::Fluid);
    else
      transition_layer(mesh, inner, outer, Region::Fluid);
  }

  const Ring& iface = disk_rings.front();
  for (int j = 0; j < iface.count; ++j)
    mesh.boundary.push_back({iface.first + j, iface.first + (j + 1) % iface.count,
                             BoundaryTag::Interface, Eigen::Vector2d::Zero()});
  const Ring& outermost = ann_rings.back();
  for (int j = 0; j < outermost.count; ++j)
    mesh.boundary.push_back({outermost.first + j, outermost.first + (j + 1) % outermost.count,
                             BoundaryTag::Outer, Eigen::Vector2d::Zero()});

  mesh.validate_and_finalize();
  return mesh;
}

namespace {

std::string region_name(Region r) { return r == Region::Elastic ? "ELASTIC" : "FLUID"; }
std::string tag_name(BoundaryTag t) { return t == BoundaryTag::Interface ? "INTERFACE" : "OUTER"; }

[[noreturn]] void load_fail(const std::string& path, int line, const std::string& what) {
  throw MeshError(path + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

void save_mesh(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw MeshError("cannot open " + path + " for writing");
  char buf[80];
  out << "dim 2\n";
  out << "vertices " << mesh.vertices.size() << "\n";
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", v.x(), v.y());
    out << buf;
  }
  out << "cells " << mesh.cells.size() << "\n";
  for (const auto& c : mesh.cells)
    out << c.v[0] << " " << c.v[1] << " " << c.v[2] << " " << region_name(c.region) << "\n";
  out << "boundary " << mesh.boundary.size() << "\n";
  for (const auto& e : mesh.boundary)
    out << e.v0 << " " << e.v1 << " " << tag_name(e.tag) << "\n";
  if (!out) throw MeshError("write to " + path + " failed");
}

Mesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open " + path);
  int lineno = 0;
  auto next_line = [&](std::istringstream& iss) {
    std::string line;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") != std::string::npos) {
        iss.clear();
        iss.str(line);
        return;
      }
    }
    load_fail(path, lineno, "unexpected end of file");
  };

  std::istringstream iss;
  std::string word;
  int dim = 0;
  next_line(iss);
  if (!(iss >> word >> dim) || word != "dim" || dim != 2)
    load_fail(path, lineno, "expected header 'dim 2'");

  Mesh mesh;
  size_t n = 0;
  next_line(iss);
  if (!(iss >> word >> n) || word != "vertices") load_fail(path, lineno, "expected 'vertices N'");
  mesh.vertices.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    double x, y;
    next_line(iss);
    if (!(iss >> x >> y)) load_fail(path, lineno, "malformed vertex " + std::to_string(i));
    mesh.vertices.emplace_back(x, y);
  }

  next_line(iss);
  if (!(iss >> word >> n) || word != "cells") load_fail(path, lineno, "expected 'cells M'");
  mesh.cells.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    int v0, v1, v2;
    std::string reg;
    next_line(iss);
    if (!(iss >> v0 >> v1 >> v2 >> reg) || (reg != "ELASTIC" && reg != "FLUID"))
      load_fail(path, lineno, "malformed cell " + std::to_string(i));
    mesh.cells.push_back({{v0, v1, v2}, reg == "ELASTIC" ? Region::Elastic : Region::Fluid});
  }

  next_line(iss);
  if (!(iss >> word >> n) || word != "boundary") load_fail(path, lineno, "expected 'boundary K'");
  mesh.boundary.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    int v0, v1;
    std::string tag;
    next_line(iss);
    if (!(iss >> v0 >> v1 >> tag) || (tag != "INTERFACE" && tag != "OUTER"))
      load_fail(path, lineno, "malformed boundary edge " + std::to_string(i));
    mesh.boundary.push_back({v0, v1, tag == "INTERFACE" ? BoundaryTag::Interface : BoundaryTag::Outer,
                             Eigen::Vector2d::Zero()});
  }

  mesh.validate_and_finalize();
  return mesh;
}

}  // namespace acsim
