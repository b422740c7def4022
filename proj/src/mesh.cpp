#include "ftle/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ftle {

void SimplicialMesh::validate() const {
  if (dim != 2 && dim != 3) {
    throw ValidationError("unsupported dim " + std::to_string(dim) + " (expected 2 or 3)");
  }
  if (n_points < 0 || n_points > std::numeric_limits<std::int32_t>::max()) {
    throw ValidationError("point count " + std::to_string(n_points) +
                          " exceeds signed 32-bit index range");
  }
  if (coords.size() != static_cast<std::size_t>(n_points) * dim) {
    throw ValidationError("coords size does not match n_points*dim");
  }
  const int verts = dim + 1;
  if (faces.size() != static_cast<std::size_t>(n_faces) * verts) {
    throw ValidationError("faces size does not match n_faces*(dim+1)");
  }
  for (std::int64_t f = 0; f < n_faces; ++f) {
    const std::int32_t* v = face(f);
    for (int a = 0; a < verts; ++a) {
      if (v[a] < 0 || v[a] >= n_points) {
        std::ostringstream os;
        os << "face " << f << " vertex " << a << ": index " << v[a]
           << " out of range [0, " << n_points << ")";
        throw ValidationError(os.str());
      }
      for (int b = a + 1; b < verts; ++b) {
        if (v[a] == v[b]) {
          std::ostringstream os;
          os << "face " << f << " repeats vertex " << v[a];
          throw ValidationError(os.str());
        }
      }
    }
  }
}

AdjacencyList build_adjacency(const SimplicialMesh& mesh) {
  mesh.validate();
  AdjacencyList adj;
  adj.sets.resize(static_cast<std::size_t>(mesh.n_points));
  const int verts = mesh.dim + 1;
  for (std::int64_t f = 0; f < mesh.n_faces; ++f) {
    const std::int32_t* v = mesh.face(f);
    for (int a = 0; a < verts; ++a) {
      for (int b = 0; b < verts; ++b) {
        if (a != b) adj.sets[v[a]].push_back(v[b]);
      }
    }
  }
  for (auto& s : adj.sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return adj;
}

namespace {

// Axis-nearest candidate on one side of point p; strict coordinate
// inequality, ties by squared Euclidean distance, then lower index.
struct Candidate {
  std::int32_t index = NeighborList::kAbsent;
  double axis_gap = 0.0;
  double dist_sq = 0.0;

  bool better_than(const Candidate& other) const {
    if (other.index == NeighborList::kAbsent) return true;
    if (axis_gap != other.axis_gap) return axis_gap < other.axis_gap;
    if (dist_sq != other.dist_sq) return dist_sq < other.dist_sq;
    return index < other.index;
  }
};

}  // namespace

std::array<std::int32_t, 6> select_axis_neighbors(const SimplicialMesh& mesh,
                                                  const AdjacencyList& adj,
                                                  std::int64_t p) {
  std::array<std::int32_t, 6> out;
  out.fill(NeighborList::kAbsent);
  for (int axis = 0; axis < mesh.dim; ++axis) {
    Candidate best[2];  // [minus, plus]
    std::int32_t prev = NeighborList::kAbsent;
    for (std::int32_t q : adj.sets[p]) {
      if (q == prev) continue;  // duplicates ignored
      prev = q;
      const double delta = mesh.coord(q, axis) - mesh.coord(p, axis);
      if (delta == 0.0) continue;  // equal coordinate excluded on both sides
      Candidate cand;
      cand.index = q;
      cand.axis_gap = std::fabs(delta);
      cand.dist_sq = 0.0;
      for (int a = 0; a < mesh.dim; ++a) {
        const double d = mesh.coord(q, a) - mesh.coord(p, a);
        cand.dist_sq += d * d;
      }
      const int side = delta < 0.0 ? 0 : 1;
      if (cand.better_than(best[side])) best[side] = cand;
    }
    out[2 * axis + 0] = best[0].index;
    out[2 * axis + 1] = best[1].index;
  }
  return out;
}

NeighborList precompute_neighbors(const SimplicialMesh& mesh, const AdjacencyList& adj) {
  if (adj.sets.size() != static_cast<std::size_t>(mesh.n_points)) {
    throw ValidationError("adjacency size does not match mesh point count");
  }
  NeighborList nl;
  nl.dim = mesh.dim;
  nl.n_points = mesh.n_points;
  nl.entries.assign(static_cast<std::size_t>(mesh.n_points) * 2 * mesh.dim,
                    NeighborList::kAbsent);
  for (std::int64_t p = 0; p < mesh.n_points; ++p) {
    const auto sel = select_axis_neighbors(mesh, adj, p);
    for (int k = 0; k < 2 * mesh.dim; ++k) {
      nl.entries[p * 2 * mesh.dim + k] = sel[k];
    }
  }
  return nl;
}

NeighborList precompute_neighbors(const SimplicialMesh& mesh) {
  return precompute_neighbors(mesh, build_adjacency(mesh));
}

std::vector<std::string> validate_neighbor_list(const SimplicialMesh& mesh,
                                                const NeighborList& nl) {
  std::vector<std::string> violations;
  auto report = [&violations](std::int64_t p, int axis, int side, const std::string& what) {
    std::ostringstream os;
    os << "point " << p << " axis " << axis << (side == 0 ? " minus" : " plus") << ": " << what;
    violations.push_back(os.str());
  };
  if (nl.dim != mesh.dim || nl.n_points != mesh.n_points ||
      nl.entries.size() != static_cast<std::size_t>(nl.n_points) * 2 * nl.dim) {
    violations.push_back("shape mismatch between mesh and neighbor list");
    return violations;
  }
  for (std::int64_t p = 0; p < nl.n_points; ++p) {
    for (int axis = 0; axis < nl.dim; ++axis) {
      for (int side = 0; side < 2; ++side) {
        const std::int32_t q = nl.entry(p, axis, side);
        if (q == NeighborList::kAbsent) continue;
        if (q < 0 || q >= nl.n_points) {
          report(p, axis, side, "index " + std::to_string(q) + " out of range");
          continue;
        }
        if (q == p) {
          report(p, axis, side, "self-reference");
          continue;
        }
        const double cq = mesh.coord(q, axis);
        const double cp = mesh.coord(p, axis);
        if (side == 0 && !(cq < cp)) {
          report(p, axis, side, "minus neighbor coordinate is not smaller");
        }
        if (side == 1 && !(cq > cp)) {
          report(p, axis, side, "plus neighbor coordinate is not larger");
        }
      }
    }
  }
  return violations;
}

}  // namespace ftle
