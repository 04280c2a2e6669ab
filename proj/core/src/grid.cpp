#include "cutgrid/grid.hpp"

#include <algorithm>
#include <cmath>

#include "cutgrid/errors.hpp"
#include "cutgrid/tribox.hpp"

namespace cutgrid {

int64_t BackgroundMesh::face_count() const {
  int64_t nx = cells[0], ny = cells[1], nz = cells[2];
  return (nx + 1) * ny * nz + nx * (ny + 1) * nz + nx * ny * (nz + 1);
}

int64_t BackgroundMesh::face_id(int64_t cell, int local_face) const {
  auto [i, j, k] = cell_coords(cell);
  int64_t nx = cells[0], ny = cells[1], nz = cells[2];
  const int axis = local_face / 2;
  const int side = local_face % 2;  // 0 = low, 1 = high
  switch (axis) {
    case 0:
      return (i + side) + (nx + 1) * (j + ny * int64_t(k));
    case 1:
      return (nx + 1) * ny * nz + i + nx * ((j + side) + (ny + 1) * int64_t(k));
    default:
      return (nx + 1) * ny * nz + nx * (ny + 1) * nz +
             i + nx * (j + ny * int64_t(k + side));
  }
}

int64_t BackgroundMesh::neighbor(int64_t cell, int local_face) const {
  auto c = cell_coords(cell);
  const int axis = local_face / 2;
  c[axis] += (local_face % 2) ? 1 : -1;
  if (c[axis] < 0 || c[axis] >= cells[axis]) return -1;
  return cell_id(c[0], c[1], c[2]);
}

BackgroundMesh build_background_mesh(const AABB& box, std::array<int, 3> cells,
                                     double enlargement) {
  for (int a = 0; a < 3; ++a)
    if (cells[a] < 1) throw InputError("build_background_mesh: cells must be >= 1");
  if (enlargement < 0.0)
    throw InputError("build_background_mesh: negative enlargement");

  Vec3 ext = box.extent();
  double max_ext = std::max({ext.x, ext.y, ext.z});
  if (max_ext <= 0.0) max_ext = 1.0;
  for (int a = 0; a < 3; ++a) {
    if (ext[a] <= 0.0) ext[a] = 1e-6 * max_ext;  // pad zero-extent axis
  }

  BackgroundMesh mesh;
  mesh.cells = cells;
  for (int a = 0; a < 3; ++a) {
    double enlarged = (1.0 + enlargement) * ext[a];
    Vec3 c = box.center();
    mesh.origin[a] = c[a] - 0.5 * enlarged;
    mesh.spacing[a] = enlarged / cells[a];
  }
  return mesh;
}

std::array<std::array<int, 2>, 3> CoarsePartition::rank_block(int rank) const {
  auto pc = rank_coords(rank);
  std::array<std::array<int, 2>, 3> block;
  for (int a = 0; a < 3; ++a)
    block[a] = {block_starts[a][pc[a]], block_starts[a][pc[a] + 1]};
  return block;
}

int CoarsePartition::owner(const BackgroundMesh& mesh, int64_t cell) const {
  auto c = mesh.cell_coords(cell);
  std::array<int, 3> pc;
  for (int a = 0; a < 3; ++a) {
    const auto& starts = block_starts[a];
    pc[a] = int(std::upper_bound(starts.begin(), starts.end(), c[a]) -
                starts.begin()) - 1;
  }
  return rank_id(pc[0], pc[1], pc[2]);
}

std::vector<int64_t> CoarsePartition::owned_cells(const BackgroundMesh& mesh,
                                                  int rank) const {
  auto block = rank_block(rank);
  std::vector<int64_t> out;
  for (int k = block[2][0]; k < block[2][1]; ++k)
    for (int j = block[1][0]; j < block[1][1]; ++j)
      for (int i = block[0][0]; i < block[0][1]; ++i)
        out.push_back(mesh.cell_id(i, j, k));
  return out;
}

std::vector<int> CoarsePartition::face_neighbor_ranks(int rank) const {
  auto pc = rank_coords(rank);
  std::vector<int> out;
  for (int axis = 0; axis < 3; ++axis) {
    for (int dir : {-1, 1}) {
      auto q = pc;
      q[axis] += dir;
      if (q[axis] < 0 || q[axis] >= parts[axis]) continue;
      out.push_back(rank_id(q[0], q[1], q[2]));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

CoarsePartition build_partition(const BackgroundMesh& mesh,
                                std::array<int, 3> parts) {
  CoarsePartition p;
  p.parts = parts;
  for (int a = 0; a < 3; ++a) {
    if (parts[a] < 1) throw InputError("build_partition: parts must be >= 1");
    if (parts[a] > mesh.cells[a])
      throw InputError("build_partition: more parts than cells on an axis");
    int n = mesh.cells[a], np = parts[a];
    int base = n / np, extra = n % np;  // lower indices take the larger blocks
    auto& starts = p.block_starts[a];
    starts.resize(np + 1);
    starts[0] = 0;
    for (int b = 0; b < np; ++b)
      starts[b + 1] = starts[b] + base + (b < extra ? 1 : 0);
  }
  return p;
}

std::vector<int64_t> candidate_cells(const BackgroundMesh& mesh, const Vec3& a,
                                     const Vec3& b, const Vec3& c) {
  AABB tb{a, a};
  tb.expand(b);
  tb.expand(c);

  // A facet lying exactly on a cell face must reach the cells on both sides,
  // whichever way the floats round, so the cell boxes are expanded by the
  // geometric tolerance before the overlap test.
  const double eps = 1e-9 * mesh.cell_diagonal();

  std::array<int, 3> lo, hi;
  for (int ax = 0; ax < 3; ++ax) {
    double rel_lo = (tb.min_corner[ax] - eps - mesh.origin[ax]) / mesh.spacing[ax];
    double rel_hi = (tb.max_corner[ax] + eps - mesh.origin[ax]) / mesh.spacing[ax];
    lo[ax] = std::max(0, int(std::floor(rel_lo)));
    hi[ax] = std::min(mesh.cells[ax] - 1, int(std::floor(rel_hi)));
    if (hi[ax] < lo[ax]) return {};
  }

  std::vector<int64_t> out;
  for (int k = lo[2]; k <= hi[2]; ++k)
    for (int j = lo[1]; j <= hi[1]; ++j)
      for (int i = lo[0]; i <= hi[0]; ++i) {
        int64_t id = mesh.cell_id(i, j, k);
        AABB box = mesh.cell_box(id);
        box.min_corner -= Vec3{eps, eps, eps};
        box.max_corner += Vec3{eps, eps, eps};
        if (triangle_box_overlap(box, a, b, c)) out.push_back(id);
      }
  return out;
}

std::vector<int64_t> subdomain_boundary_cells(const BackgroundMesh& mesh,
                                              const CoarsePartition& partition,
                                              int rank) {
  auto block = partition.rank_block(rank);
  std::vector<int64_t> out;
  for (int k = block[2][0]; k < block[2][1]; ++k)
    for (int j = block[1][0]; j < block[1][1]; ++j)
      for (int i = block[0][0]; i < block[0][1]; ++i) {
        bool shell = i == block[0][0] || i == block[0][1] - 1 ||
                     j == block[1][0] || j == block[1][1] - 1 ||
                     k == block[2][0] || k == block[2][1] - 1;
        if (shell) out.push_back(mesh.cell_id(i, j, k));
      }
  return out;
}

}  // namespace cutgrid
