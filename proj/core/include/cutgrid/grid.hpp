#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cutgrid/surface.hpp"
#include "cutgrid/vec3.hpp"

namespace cutgrid {

// Uniform Cartesian background mesh over the artificial domain. Cells, faces
// and nodes are indexed lexicographically, x fastest.
struct BackgroundMesh {
  Vec3 origin;
  Vec3 spacing;
  std::array<int, 3> cells{};

  int64_t total_cells() const {
    return int64_t(cells[0]) * cells[1] * cells[2];
  }
  int64_t cell_id(int i, int j, int k) const {
    return i + int64_t(cells[0]) * (j + int64_t(cells[1]) * k);
  }
  std::array<int, 3> cell_coords(int64_t id) const {
    int i = int(id % cells[0]);
    int j = int((id / cells[0]) % cells[1]);
    int k = int(id / (int64_t(cells[0]) * cells[1]));
    return {i, j, k};
  }
  AABB cell_box(int64_t id) const {
    auto [i, j, k] = cell_coords(id);
    Vec3 lo = origin + Vec3{i * spacing.x, j * spacing.y, k * spacing.z};
    return {lo, lo + spacing};
  }
  Vec3 cell_center(int64_t id) const {
    AABB b = cell_box(id);
    return b.center();
  }
  AABB domain() const {
    return {origin, origin + Vec3{cells[0] * spacing.x, cells[1] * spacing.y,
                                  cells[2] * spacing.z}};
  }
  double cell_diagonal() const { return norm(spacing); }

  // Faces: the three axis-normal families, concatenated x, y, z.
  int64_t face_count() const;
  // Global id of the cell's local face 0..5 (x-,x+,y-,y+,z-,z+).
  int64_t face_id(int64_t cell, int local_face) const;
  // Neighbor cell across local face, or -1 outside the mesh.
  int64_t neighbor(int64_t cell, int local_face) const;
};

// Centered enlargement: each axis length L grows to (1 + enlargement) * L.
// A zero-extent axis is padded to a small fraction of the largest extent first.
BackgroundMesh build_background_mesh(const AABB& box, std::array<int, 3> cells,
                                     double enlargement);

// Block-Cartesian decomposition into parts[0] x parts[1] x parts[2] ranks.
// Lower part indices take the larger blocks when the division is uneven.
struct CoarsePartition {
  std::array<int, 3> parts{};
  std::array<std::vector<int>, 3> block_starts;  // per axis, size parts[a] + 1

  int rank_count() const { return parts[0] * parts[1] * parts[2]; }
  int rank_id(int pi, int pj, int pk) const {
    return pi + parts[0] * (pj + parts[1] * pk);
  }
  std::array<int, 3> rank_coords(int rank) const {
    return {rank % parts[0], (rank / parts[0]) % parts[1],
            rank / (parts[0] * parts[1])};
  }
  // Owned cell index range [lo, hi) per axis.
  std::array<std::array<int, 2>, 3> rank_block(int rank) const;
  int owner(const BackgroundMesh& mesh, int64_t cell) const;
  std::vector<int64_t> owned_cells(const BackgroundMesh& mesh, int rank) const;
  // Ranks sharing a block face with this rank (up to 6), ascending.
  std::vector<int> face_neighbor_ranks(int rank) const;
};

CoarsePartition build_partition(const BackgroundMesh& mesh, std::array<int, 3> parts);

// Superset of the cells intersected by the facet: AABB range filtered by an
// exact triangle-box overlap test.
std::vector<int64_t> candidate_cells(const BackgroundMesh& mesh, const Vec3& a,
                                     const Vec3& b, const Vec3& c);

// Owned cells touching the subdomain block boundary (one-cell-thick shell).
std::vector<int64_t> subdomain_boundary_cells(const BackgroundMesh& mesh,
                                              const CoarsePartition& partition,
                                              int rank);

}  // namespace cutgrid
