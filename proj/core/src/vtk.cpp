#include "cutgrid/vtk.hpp"

#include <fstream>
#include <iomanip>

#include "cutgrid/errors.hpp"

namespace cutgrid {

namespace {

struct VtkCell {
  std::vector<int64_t> points;
  int type;  // 10 tetra, 12 hexahedron
};

void write_unstructured(const std::string& path, const std::vector<Vec3>& points,
                        const std::vector<VtkCell>& cells) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write VTK file: " + path);
  out << std::setprecision(17);
  out << "# vtk DataFile Version 3.0\nclipped volume\nASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << points.size() << " double\n";
  for (const Vec3& p : points) out << p.x << " " << p.y << " " << p.z << "\n";
  int64_t list_size = 0;
  for (const VtkCell& c : cells) list_size += 1 + int64_t(c.points.size());
  out << "CELLS " << cells.size() << " " << list_size << "\n";
  for (const VtkCell& c : cells) {
    out << c.points.size();
    for (int64_t p : c.points) out << " " << p;
    out << "\n";
  }
  out << "CELL_TYPES " << cells.size() << "\n";
  for (const VtkCell& c : cells) out << c.type << "\n";
}

double tet_volume(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  return dot(cross(b - a, c - a), d - a) / 6.0;
}

}  // namespace

double write_vtk_volume(const EmbeddedDiscretisation& disc, const std::string& path) {
  std::vector<Vec3> points;
  std::vector<VtkCell> cells;
  double volume = 0.0;

  for (int64_t cell : disc.interior_cells) {
    AABB b = disc.mesh.cell_box(cell);
    const Vec3& lo = b.min_corner;
    const Vec3& hi = b.max_corner;
    int64_t base = int64_t(points.size());
    points.push_back({lo.x, lo.y, lo.z});
    points.push_back({hi.x, lo.y, lo.z});
    points.push_back({hi.x, hi.y, lo.z});
    points.push_back({lo.x, hi.y, lo.z});
    points.push_back({lo.x, lo.y, hi.z});
    points.push_back({hi.x, lo.y, hi.z});
    points.push_back({hi.x, hi.y, hi.z});
    points.push_back({lo.x, hi.y, hi.z});
    cells.push_back({{base, base + 1, base + 2, base + 3, base + 4, base + 5,
                      base + 6, base + 7},
                     12});
    Vec3 ext = b.extent();
    volume += ext.x * ext.y * ext.z;
  }

  for (const auto& [cell, cut] : disc.cuts) {
    for (const Polytope& p : cut.interior_polytopes) {
      if (p.empty()) continue;
      Vec3 centroid = polytope_centroid(p);
      int64_t cidx = int64_t(points.size());
      points.push_back(centroid);
      int64_t base = int64_t(points.size());
      for (const Vec3& v : p.vertices) points.push_back(v);
      for (const auto& face : p.faces) {
        for (size_t i = 1; i + 1 < face.size(); ++i) {
          int64_t a = base + face[0], b = base + face[i], c = base + face[i + 1];
          cells.push_back({{cidx, a, b, c}, 10});
          volume += tet_volume(centroid, points[size_t(a)], points[size_t(b)],
                               points[size_t(c)]);
        }
      }
    }
  }

  write_unstructured(path, points, cells);
  return volume;
}

int64_t write_vtk_boundary(const EmbeddedDiscretisation& disc, const std::string& path) {
  std::vector<Vec3> points;
  std::vector<std::array<int64_t, 3>> tris;
  std::vector<int> labels;

  for (const auto& [cell, cut] : disc.cuts) {
    for (const Polygon& piece : cut.boundary_pieces) {
      int64_t base = int64_t(points.size());
      for (const Vec3& p : piece.points) points.push_back(p);
      for (size_t i = 1; i + 1 < piece.points.size(); ++i) {
        tris.push_back({base, base + int64_t(i), base + int64_t(i + 1)});
        labels.push_back(piece.label);
      }
    }
  }

  std::ofstream out(path);
  if (!out) throw InputError("cannot write VTK file: " + path);
  out << std::setprecision(17);
  out << "# vtk DataFile Version 3.0\nboundary pieces\nASCII\n";
  out << "DATASET POLYDATA\n";
  out << "POINTS " << points.size() << " double\n";
  for (const Vec3& p : points) out << p.x << " " << p.y << " " << p.z << "\n";
  out << "POLYGONS " << tris.size() << " " << tris.size() * 4 << "\n";
  for (const auto& t : tris) out << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
  out << "CELL_DATA " << tris.size() << "\n";
  out << "SCALARS label int 1\nLOOKUP_TABLE default\n";
  for (int l : labels) out << l << "\n";
  return int64_t(tris.size());
}

}  // namespace cutgrid
