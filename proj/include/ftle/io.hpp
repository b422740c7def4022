#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ftle/mesh.hpp"

namespace ftle {

// Binary file layout (little-endian):
//   magic "FTLE" | u32 version=1 | u32 kind | u32 dim | u64 count | payload
// kind: 0=coords, 1=faces, 2=flowmap, 3=neighbors, 4=field
// payload: coords/flowmap = count*dim f64; faces = count*(dim+1) i32;
//          neighbors = count*(2*dim) i32; field = count f64.
// CSV variants: one record per line, same column order, '#' comments.
// Paths ending in ".csv" are read/written as CSV, everything else as binary.
enum class PayloadKind : std::uint32_t {
  Coords = 0,
  Faces = 1,
  FlowMap = 2,
  Neighbors = 3,
  Field = 4,
};

SimplicialMesh load_mesh(const std::string& coords_path, const std::string& faces_path);
FlowMap load_flowmap(const std::string& path, double t_horizon);
NeighborList load_neighbors(const std::string& path);
std::vector<double> load_field(const std::string& path);

void save_coords(const std::string& path, const SimplicialMesh& mesh);
void save_faces(const std::string& path, const SimplicialMesh& mesh);
void save_flowmap(const std::string& path, const FlowMap& fm);
void save_neighbors(const std::string& path, const NeighborList& nl);
void save_field(const std::string& path, int dim, const std::vector<double>& values);

// FNV-1a 64-bit over the raw bytes of a file. Used for run manifests.
std::uint64_t file_checksum(const std::string& path);

}  // namespace ftle
