#pragma once

#include <random>
#include <string>
#include <vector>

#include "ftle/mesh.hpp"

namespace ftle {

// Deterministic uniform double in [0,1), independent of the standard
// library's distribution implementations.
inline double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

// Axis-aligned unit-spacing grid with a consistent simplicial split:
// 2 triangles per cell (dim=2) or 6 tetrahedra per cube (dim=3).
// n must be a perfect square/cube.
SimplicialMesh generate_grid_mesh(int dim, std::int64_t n);

// n points uniform in the unit square/cube with 2n random faces of distinct
// vertices. Connectivity is random, not geometric; intended for fixtures.
SimplicialMesh generate_random_mesh(int dim, std::int64_t n, std::mt19937_64& rng);

// flow: "identity", "linear" (row-major dim*dim matrix), or "random"
// (values uniform in [-1,1]).
FlowMap generate_flow(const SimplicialMesh& mesh, const std::string& flow,
                      const std::vector<double>& linear_matrix, std::mt19937_64& rng);

}  // namespace ftle
