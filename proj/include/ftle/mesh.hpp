#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ftle/errors.hpp"

namespace ftle {

// Triangle (dim=2) or tetrahedron (dim=3) mesh. Coordinates are row-major
// n_points x dim, faces row-major n_faces x (dim+1).
struct SimplicialMesh {
  int dim = 2;
  std::int64_t n_points = 0;
  std::int64_t n_faces = 0;
  std::vector<double> coords;
  std::vector<std::int32_t> faces;

  double coord(std::int64_t p, int axis) const { return coords[p * dim + axis]; }
  const std::int32_t* face(std::int64_t f) const { return faces.data() + f * (dim + 1); }

  // Throws ValidationError on any invariant violation.
  void validate() const;
};

// Advected positions phi(x) at horizon t_horizon. Shape matches its mesh.
struct FlowMap {
  int dim = 2;
  std::int64_t n_points = 0;
  std::vector<double> values;  // n_points x dim
  double t_horizon = 1.0;

  double value(std::int64_t p, int axis) const { return values[p * dim + axis]; }
};

// Per-point axis-ordered neighbor indexes, -1 = absent.
// Entry order per point: [x-, x+, y-, y+] (dim=2) or [x-, x+, y-, y+, z-, z+].
struct NeighborList {
  int dim = 2;
  std::int64_t n_points = 0;
  std::vector<std::int32_t> entries;  // n_points x 2*dim

  static constexpr std::int32_t kAbsent = -1;

  std::int32_t entry(std::int64_t p, int axis, int side) const {
    return entries[p * 2 * dim + 2 * axis + side];  // side: 0 = minus, 1 = plus
  }
};

// Per-point sorted sets of face-adjacent points. Symmetric, irreflexive.
struct AdjacencyList {
  std::vector<std::vector<std::int32_t>> sets;
};

// q in adj(p) iff p and q co-occur in at least one face.
AdjacencyList build_adjacency(const SimplicialMesh& mesh);

// Axis neighbors of a single point under the selection rule below; entries
// ordered [x-, x+, y-, y+, (z-, z+)], unused slots left at -1 for dim=2.
std::array<std::int32_t, 6> select_axis_neighbors(const SimplicialMesh& mesh,
                                                  const AdjacencyList& adj,
                                                  std::int64_t p);

// Nearest-along-axis selection among face-adjacent points with strict
// coordinate inequality; ties broken by Euclidean distance, then lower index.
// Candidates with exactly equal axis coordinate are excluded on both sides.
NeighborList precompute_neighbors(const SimplicialMesh& mesh, const AdjacencyList& adj);

NeighborList precompute_neighbors(const SimplicialMesh& mesh);

// One human-readable line per invariant violation; empty = valid.
std::vector<std::string> validate_neighbor_list(const SimplicialMesh& mesh,
                                                const NeighborList& nl);

}  // namespace ftle
