#include "ftle/generate.hpp"

#include <cmath>

namespace ftle {

SimplicialMesh generate_grid_mesh(int dim, std::int64_t n) {
  if (dim != 2 && dim != 3) throw ValidationError("dim must be 2 or 3");
  const double root = dim == 2 ? std::sqrt(static_cast<double>(n))
                               : std::cbrt(static_cast<double>(n));
  const std::int64_t m = std::llround(root);
  const std::int64_t m_pow = dim == 2 ? m * m : m * m * m;
  if (m < 1 || m_pow != n) {
    throw ValidationError("grid point count must be a perfect " +
                          std::string(dim == 2 ? "square" : "cube"));
  }
  SimplicialMesh mesh;
  mesh.dim = dim;
  mesh.n_points = n;
  mesh.coords.reserve(n * dim);
  if (dim == 2) {
    for (std::int64_t j = 0; j < m; ++j) {
      for (std::int64_t i = 0; i < m; ++i) {
        mesh.coords.push_back(static_cast<double>(i));
        mesh.coords.push_back(static_cast<double>(j));
      }
    }
    for (std::int64_t j = 0; j + 1 < m; ++j) {
      for (std::int64_t i = 0; i + 1 < m; ++i) {
        const std::int32_t v00 = static_cast<std::int32_t>(j * m + i);
        const std::int32_t v10 = v00 + 1;
        const std::int32_t v01 = static_cast<std::int32_t>((j + 1) * m + i);
        const std::int32_t v11 = v01 + 1;
        mesh.faces.insert(mesh.faces.end(), {v00, v10, v01});
        mesh.faces.insert(mesh.faces.end(), {v10, v11, v01});
      }
    }
  } else {
    for (std::int64_t k = 0; k < m; ++k) {
      for (std::int64_t j = 0; j < m; ++j) {
        for (std::int64_t i = 0; i < m; ++i) {
          mesh.coords.push_back(static_cast<double>(i));
          mesh.coords.push_back(static_cast<double>(j));
          mesh.coords.push_back(static_cast<double>(k));
        }
      }
    }
    // Six-tetrahedron split; every tet contains the cube's main diagonal.
    const int paths[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                             {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    auto vid = [m](std::int64_t i, std::int64_t j, std::int64_t k) {
      return static_cast<std::int32_t>((k * m + j) * m + i);
    };
    for (std::int64_t k = 0; k + 1 < m; ++k) {
      for (std::int64_t j = 0; j + 1 < m; ++j) {
        for (std::int64_t i = 0; i + 1 < m; ++i) {
          for (const auto& path : paths) {
            std::int64_t c[3] = {i, j, k};
            std::int32_t tet[4];
            tet[0] = vid(c[0], c[1], c[2]);
            for (int step = 0; step < 3; ++step) {
              ++c[path[step]];
              tet[step + 1] = vid(c[0], c[1], c[2]);
            }
            mesh.faces.insert(mesh.faces.end(), {tet[0], tet[1], tet[2], tet[3]});
          }
        }
      }
    }
  }
  mesh.n_faces = static_cast<std::int64_t>(mesh.faces.size()) / (dim + 1);
  return mesh;
}

SimplicialMesh generate_random_mesh(int dim, std::int64_t n, std::mt19937_64& rng) {
  if (dim != 2 && dim != 3) throw ValidationError("dim must be 2 or 3");
  if (n < dim + 1) throw ValidationError("random mesh needs at least dim+1 points");
  SimplicialMesh mesh;
  mesh.dim = dim;
  mesh.n_points = n;
  mesh.coords.reserve(n * dim);
  for (std::int64_t p = 0; p < n * dim; ++p) mesh.coords.push_back(uniform01(rng));
  const std::int64_t n_faces = 2 * n;
  const int verts = dim + 1;
  for (std::int64_t f = 0; f < n_faces; ++f) {
    std::int32_t v[4];
    for (int a = 0; a < verts; ++a) {
      bool fresh = false;
      while (!fresh) {
        v[a] = static_cast<std::int32_t>(rng() % static_cast<std::uint64_t>(n));
        fresh = true;
        for (int b = 0; b < a; ++b) {
          if (v[b] == v[a]) fresh = false;
        }
      }
    }
    mesh.faces.insert(mesh.faces.end(), v, v + verts);
  }
  mesh.n_faces = n_faces;
  return mesh;
}

FlowMap generate_flow(const SimplicialMesh& mesh, const std::string& flow,
                      const std::vector<double>& linear_matrix, std::mt19937_64& rng) {
  FlowMap fm;
  fm.dim = mesh.dim;
  fm.n_points = mesh.n_points;
  fm.t_horizon = 1.0;
  if (flow == "identity") {
    fm.values = mesh.coords;
  } else if (flow == "linear") {
    if (linear_matrix.size() != static_cast<std::size_t>(mesh.dim) * mesh.dim) {
      throw ValidationError("linear flow needs a dim*dim matrix");
    }
    fm.values.resize(mesh.coords.size());
    for (std::int64_t p = 0; p < mesh.n_points; ++p) {
      for (int i = 0; i < mesh.dim; ++i) {
        double sum = 0.0;
        for (int j = 0; j < mesh.dim; ++j) {
          sum += linear_matrix[i * mesh.dim + j] * mesh.coord(p, j);
        }
        fm.values[p * mesh.dim + i] = sum;
      }
    }
  } else if (flow == "random") {
    fm.values.resize(mesh.coords.size());
    // Values land on the 2^-20 dyadic grid in [-1, 1) so that adding small
    // dyadic constants stays exact and finite differences cancel bit-for-bit.
    for (auto& v : fm.values) {
      v = std::floor(uniform01(rng) * 2097152.0 - 1048576.0) * 0x1.0p-20;
    }
  } else {
    throw ValidationError("unknown flow kind '" + flow + "'");
  }
  return fm;
}

}  // namespace ftle
